// Copyright 2026 The GTR Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gtr/sql/clause_sets.hpp"

#include <gtest/gtest.h>

#include "gtr/sql/lexer.hpp"
#include "gtr/sql/parser.hpp"
#include "sql_fixtures.hpp"

namespace gtr::sql {
namespace {

using Terms = std::multiset<std::string>;

Schema toy_schema() {
  Schema s;
  s.add_table("singer", {"singer_id", "name", "country", "song_name", "song_release_year", "age", "is_male"});
  s.add_table("stadium", {"stadium_id", "location", "name", "capacity", "highest", "lowest", "average"});
  s.add_table("concert", {"concert_id", "concert_name", "theme", "stadium_id", "singer_id", "year"});
  return s;
}

std::vector<std::string_view> corpus() {
  std::vector<std::string_view> out;
  for (const auto& p : testing::kEmPairs) {
    out.push_back(p.pred);
    out.push_back(p.gold);
  }
  for (const auto& h : testing::kHardnessFixtures) out.push_back(h.sql);
  for (auto q : testing::kExtraCorpus) out.push_back(q);
  return out;
}

bool same(const ClauseSets& a, const ClauseSets& b) { return serialize(a) == serialize(b) && compare_clauses(a, b).all(); }

TEST(Lexer, Tokens) {
  const auto t = lex("SELECT `a b`, 'it''s', 1.5e3 FROM t -- c\nWHERE x <> 2");
  ASSERT_GE(t.size(), 10u);
  EXPECT_EQ(t[1].kind, TokenKind::kQuotedIdent);
  EXPECT_EQ(t[1].text, "a b");
  EXPECT_EQ(t[3].kind, TokenKind::kString);
  EXPECT_EQ(t[3].text, "it's");
  EXPECT_EQ(t[5].kind, TokenKind::kNumber);
  EXPECT_TRUE(t[0].is("select"));
  EXPECT_EQ(t.back().kind, TokenKind::kEnd);
  EXPECT_EQ(t.back().offset, std::string_view("SELECT `a b`, 'it''s', 1.5e3 FROM t -- c\nWHERE x <> 2").size());
}

TEST(Lexer, UnterminatedString) {
  try {
    lex("SELECT 'abc");
    FAIL();
  } catch (const SqlParseError& e) {
    EXPECT_EQ(e.code(), Errc::kParseError);
    EXPECT_EQ(e.offset(), 7u);
  }
}

TEST(ParseSql, Simple) {
  const auto c = parse_sql("SELECT name FROM singer");
  EXPECT_EQ(c.select, (Terms{"name"}));
  EXPECT_EQ(c.from, (Terms{"singer"}));
  EXPECT_TRUE(c.join_on.empty());
  EXPECT_TRUE(c.where.empty());
  EXPECT_TRUE(c.group_by.empty());
  EXPECT_TRUE(c.having.empty());
  EXPECT_TRUE(c.order_by.empty());
  EXPECT_FALSE(c.limit);
  EXPECT_FALSE(c.distinct);
  EXPECT_TRUE(c.set_ops.empty());
  EXPECT_TRUE(c.subqueries.empty());
}

TEST(ParseSql, AliasResolved) {
  EXPECT_EQ(parse_sql("SELECT T1.name FROM singer AS T1").select, (Terms{"singer.name"}));
  EXPECT_EQ(parse_sql("SELECT t1.NAME FROM Singer t1").select, (Terms{"singer.name"}));
}

TEST(ParseSql, SchemaQualifiesBareColumns) {
  const auto schema = toy_schema();
  const auto c = parse_sql(
      "SELECT name, year FROM singer JOIN concert ON singer.singer_id = concert.singer_id WHERE age > 3", &schema);
  EXPECT_EQ(c.select, (Terms{"concert.year", "singer.name"}));
  EXPECT_EQ(c.where, (Terms{"singer.age > 'VALUE'"}));
  EXPECT_EQ(c.join_on, (Terms{"concert.singer_id = singer.singer_id"}));
  const auto outer = parse_sql("SELECT name FROM singer WHERE EXISTS (SELECT 1 FROM concert WHERE singer_id = 1)",
                               &schema);
  ASSERT_EQ(outer.subqueries.size(), 1u);
  EXPECT_EQ(outer.subqueries[0].where, (Terms{"'VALUE' = concert.singer_id"}));
}

TEST(ParseSql, LiteralsAnonymized) {
  const auto c = parse_sql("SELECT name FROM singer WHERE age > 30 AND country = 'France' AND x IN (1, 2)");
  EXPECT_EQ(c.where, (Terms{"'VALUE' = country", "age > 'VALUE'", "x in ('VALUE', 'VALUE')"}));
}

TEST(ParseSql, NotEqualSpellings) {
  EXPECT_EQ(parse_sql("SELECT a FROM t WHERE a <> 1").where, parse_sql("SELECT a FROM t WHERE a != 2").where);
  EXPECT_EQ(parse_sql("SELECT a FROM t WHERE a == 1").where, parse_sql("SELECT a FROM t WHERE a = 2").where);
}

TEST(ParseSql, DistinctIsPartOfSelect) {
  EXPECT_TRUE(parse_sql("SELECT DISTINCT a FROM t").distinct);
  EXPECT_EQ(parse_sql("SELECT count(DISTINCT a) FROM t").select, (Terms{"count(distinct a)"}));
}

TEST(ParseSql, OrderByAndLimit) {
  const auto c = parse_sql("SELECT a FROM t ORDER BY a DESC, b LIMIT 10");
  ASSERT_EQ(c.order_by.size(), 2u);
  EXPECT_EQ(c.order_by[0], (OrderTerm{"a", true}));
  EXPECT_EQ(c.order_by[1], (OrderTerm{"b", false}));
  EXPECT_TRUE(c.limit);
}

TEST(ParseSql, BooleanStructure) {
  const auto c = parse_sql("SELECT a FROM t WHERE (b = 1 OR c = 2) AND NOT d > 3");
  EXPECT_EQ(c.where, (Terms{"('VALUE' = b or 'VALUE' = c)", "not (d > 'VALUE')"}));
  const auto d = parse_sql("SELECT a FROM t WHERE c = 2 OR b = 1 AND e = 1");
  EXPECT_EQ(d.where, (Terms{"('VALUE' = c or ('VALUE' = b and 'VALUE' = e))"}));
}

TEST(ParseSql, SetOperations) {
  const auto c = parse_sql("SELECT a FROM t UNION SELECT b FROM u INTERSECT SELECT c FROM v");
  ASSERT_EQ(c.set_ops.size(), 1u);
  EXPECT_EQ(c.set_ops[0].op, SetOp::kUnion);
  ASSERT_EQ(c.set_ops[0].operand.set_ops.size(), 1u);
  EXPECT_EQ(c.set_ops[0].operand.set_ops[0].op, SetOp::kIntersect);
  EXPECT_EQ(parse_sql("SELECT a FROM t UNION ALL SELECT a FROM u").set_ops[0].op, SetOp::kUnionAll);
}

TEST(ParseSql, SubqueriesListed) {
  const auto c = parse_sql("SELECT a FROM t WHERE a IN (SELECT b FROM u) AND c > (SELECT max(c) FROM v)");
  ASSERT_EQ(c.subqueries.size(), 2u);
  EXPECT_EQ(c.subqueries[0].from.size() + c.subqueries[1].from.size(), 2u);
  EXPECT_EQ(c.where.count("a in (select b from u)"), 1u);
}

TEST(ParseSql, DerivedTableAliasIsPositional) {
  const auto a = parse_sql("SELECT t.c FROM (SELECT count(*) AS c FROM u) AS t");
  const auto b = parse_sql("SELECT zz.c FROM (SELECT count(*) AS c FROM u) zz");
  EXPECT_EQ(a.select, (Terms{"_d1.c"}));
  EXPECT_TRUE(same(a, b));
}

TEST(ParseSql, SelectAliasInOrderBy) {
  const auto c = parse_sql("SELECT count(*) AS n FROM t GROUP BY a HAVING n > 1 ORDER BY n");
  EXPECT_EQ(c.having, (Terms{"count(*) > 'VALUE'"}));
  EXPECT_EQ(c.order_by[0].expr, "count(*)");
}

TEST(ParseSql, UsingBecomesEquality) {
  const auto c = parse_sql("SELECT a FROM t JOIN u USING (k)");
  EXPECT_EQ(c.join_on, (Terms{"t.k = u.k"}));
}

TEST(ParseSql, QuotedIdentifiersRoundTrip) {
  const auto c = parse_sql("SELECT `weird name`, \"select\" FROM `my table`");
  EXPECT_EQ(c.from, (Terms{"`my table`"}));
  EXPECT_EQ(parse_sql(serialize(c)).from, c.from);
}

TEST(ParseSql, ErrorAtEnd) {
  try {
    parse_sql("SELECT * FROM");
    FAIL();
  } catch (const SqlParseError& e) {
    EXPECT_EQ(e.code(), Errc::kParseError);
    EXPECT_EQ(e.offset(), 13u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(ParseSql, Errors) {
  for (const char* bad : {"", "SELECT", "SELECT a FROM t WHERE", "SELECT a FROM t GARBAGE JUNK", "DELETE FROM t",
                          "SELECT a FROM t; SELECT b FROM u", "SELECT (a FROM t", "SELECT a FROM t LIMIT"}) {
    EXPECT_THROW(parse_sql(bad), SqlParseError) << bad;
  }
}

TEST(ParseSql, TrailingSemicolonAllowed) {
  EXPECT_TRUE(same(parse_sql("SELECT a FROM t;"), parse_sql("SELECT a FROM t")));
}

TEST(ParseSql, IdempotentOverCorpus) {
  const auto schema = toy_schema();
  for (auto q : corpus()) {
    for (const Schema* s : {static_cast<const Schema*>(nullptr), &schema}) {
      const auto once = parse_sql(q, s);
      const auto text = serialize(once);
      ClauseSets twice;
      ASSERT_NO_THROW(twice = parse_sql(text, s)) << q << "\n  serialized: " << text;
      EXPECT_TRUE(same(once, twice)) << q << "\n  " << text << "\n  " << serialize(twice);
      EXPECT_EQ(once.counts, twice.counts) << q;
    }
  }
}

TEST(ParseSql, DeterministicOverCorpus) {
  for (auto q : corpus()) EXPECT_EQ(serialize(parse_sql(q)), serialize(parse_sql(q))) << q;
}

TEST(ComponentCounts, Example) {
  const auto c = parse_sql(
      "SELECT T1.name, count(*) FROM singer AS T1 JOIN concert AS T2 ON T1.singer_id = T2.singer_id "
      "WHERE T1.name LIKE 'a%' OR T1.age > 3 GROUP BY T1.name HAVING count(*) > 1 AND max(T2.year) < 2015 "
      "ORDER BY count(*) DESC LIMIT 3");
  const auto& k = c.counts;
  EXPECT_TRUE(k.has_where);
  EXPECT_EQ(k.where_predicates, 2u);
  EXPECT_EQ(k.group_by, 1u);
  EXPECT_TRUE(k.has_order_by);
  EXPECT_TRUE(k.has_limit);
  EXPECT_EQ(k.table_units, 2u);
  EXPECT_EQ(k.or_connectives, 1u);
  EXPECT_EQ(k.like_predicates, 1u);
  EXPECT_EQ(k.nested, 0u);
  // select count(*) 1 + order by count(*) 1 + having connective 1
  EXPECT_EQ(k.aggregates, 3u);
  EXPECT_EQ(k.select_columns, 2u);
}

TEST(ComponentCounts, NestingAndNegation) {
  const auto c = parse_sql(
      "SELECT a FROM t WHERE b NOT IN (SELECT b FROM u) AND c > (SELECT avg(c) FROM t) "
      "EXCEPT SELECT a FROM v");
  EXPECT_EQ(c.counts.nested, 3u);
  EXPECT_EQ(c.counts.aggregates, 1u);
  const auto f = parse_sql("SELECT x FROM (SELECT a AS x FROM t) AS d");
  EXPECT_EQ(f.counts.nested, 0u);
  EXPECT_EQ(f.counts.table_units, 1u);
}

}  // namespace
}  // namespace gtr::sql
