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

#include "gtr/sql/parser.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace gtr::sql {
namespace {

constexpr std::array<std::string_view, 47> kReserved = {
    "SELECT", "FROM",   "WHERE",  "GROUP",   "BY",     "HAVING", "ORDER",     "LIMIT",
    "OFFSET", "UNION",  "INTERSECT", "EXCEPT", "ALL",  "DISTINCT", "JOIN",    "INNER",
    "LEFT",   "RIGHT",  "FULL",   "OUTER",   "CROSS",  "NATURAL", "ON",       "USING",
    "AS",     "AND",    "OR",     "NOT",     "IN",     "IS",     "NULL",      "LIKE",
    "BETWEEN", "EXISTS", "ASC",   "DESC",    "CASE",   "WHEN",   "THEN",      "ELSE",
    "END",    "WITH",   "VALUES", "INSERT",  "UPDATE", "DELETE", "CAST"};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view sql) : tokens_(lex(sql)) {}

  Select parse_statement() {
    if (peek().is("WITH")) fail({"SELECT (WITH clauses are outside the supported grammar)"});
    Select s = parse_query();
    while (peek().is_symbol(";")) advance();
    if (peek().kind != TokenKind::kEnd) fail({"end of statement"});
    return s;
  }

 private:
  const SqlToken& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const SqlToken& advance() {
    const SqlToken& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(std::string_view keyword) {
    if (!peek().is(keyword)) return false;
    advance();
    return true;
  }
  bool accept_symbol(std::string_view symbol) {
    if (!peek().is_symbol(symbol)) return false;
    advance();
    return true;
  }
  void expect(std::string_view keyword) {
    if (!accept(keyword)) fail({std::string(keyword)});
  }
  void expect_symbol(std::string_view symbol) {
    if (!accept_symbol(symbol)) fail({"'" + std::string(symbol) + "'"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const SqlToken& t = peek();
    std::string found;
    switch (t.kind) {
      case TokenKind::kEnd: found = "end of statement"; break;
      case TokenKind::kString: found = "string literal"; break;
      default: found = "'" + t.text + "'"; break;
    }
    throw SqlParseError(t.offset, std::move(expected), std::move(found));
  }

  static bool reserved(const SqlToken& t) {
    if (t.kind != TokenKind::kWord) return false;
    return is_reserved_word(t.text);
  }
  static bool identifier(const SqlToken& t) {
    return t.kind == TokenKind::kQuotedIdent || (t.kind == TokenKind::kWord && !reserved(t));
  }

  std::string expect_identifier(std::string what) {
    if (!identifier(peek())) fail({std::move(what)});
    return advance().text;
  }

  std::string optional_alias() {
    if (accept("AS")) {
      if (identifier(peek()) || peek().kind == TokenKind::kString) return advance().text;
      fail({"alias"});
    }
    if (identifier(peek())) return advance().text;
    return {};
  }

  std::shared_ptr<const Select> parse_subquery_body() {
    auto s = std::make_shared<Select>(parse_query());
    return s;
  }

  Select parse_query() {
    Select s = parse_core();
    std::optional<SetOp> op;
    if (accept("UNION")) {
      op = accept("ALL") ? SetOp::kUnionAll : SetOp::kUnion;
    } else if (accept("INTERSECT")) {
      op = SetOp::kIntersect;
    } else if (accept("EXCEPT")) {
      op = SetOp::kExcept;
    }
    if (op) {
      s.set_op = op;
      if (peek().is_symbol("(") && peek(1).is("SELECT")) {
        advance();
        s.set_rhs = parse_subquery_body();
        expect_symbol(")");
      } else {
        s.set_rhs = parse_subquery_body();
      }
    }
    return s;
  }

  Select parse_core() {
    Select s;
    expect("SELECT");
    if (accept("DISTINCT")) {
      s.distinct = true;
    } else {
      accept("ALL");
    }
    do {
      s.items.push_back(parse_select_item());
    } while (accept_symbol(","));

    if (accept("FROM")) parse_from(s);
    if (accept("WHERE")) s.where = parse_expr();
    if (accept("GROUP")) {
      expect("BY");
      do {
        s.group_by.push_back(parse_expr());
      } while (accept_symbol(","));
    }
    if (accept("HAVING")) s.having = parse_expr();
    if (accept("ORDER")) {
      expect("BY");
      do {
        OrderItem item{parse_expr(), false};
        if (accept("DESC")) {
          item.descending = true;
        } else {
          accept("ASC");
        }
        s.order_by.push_back(std::move(item));
      } while (accept_symbol(","));
    }
    if (accept("LIMIT")) {
      parse_additive();
      if (accept("OFFSET") || accept_symbol(",")) parse_additive();
      s.has_limit = true;
    }
    return s;
  }

  SelectItem parse_select_item() {
    SelectItem item;
    if (peek().is_symbol("*")) {
      item.expr = Expr{Expr::Kind::kStar};
      item.expr.offset = advance().offset;
      return item;
    }
    if (identifier(peek()) && peek(1).is_symbol(".") && peek(2).is_symbol("*")) {
      item.expr = Expr{Expr::Kind::kStar};
      item.expr.offset = peek().offset;
      item.expr.qualifier = advance().text;
      advance();
      advance();
      return item;
    }
    item.expr = parse_expr();
    item.alias = optional_alias();
    return item;
  }

  TableRef parse_table_ref() {
    TableRef ref;
    if (peek().is_symbol("(")) {
      if (!peek(1).is("SELECT")) fail({"SELECT"});
      advance();
      ref.subquery = parse_subquery_body();
      expect_symbol(")");
    } else {
      if (!identifier(peek())) fail({"table name", "'('"});
      ref.name = advance().text;
    }
    ref.alias = optional_alias();
    return ref;
  }

  bool accept_join() {
    const std::size_t save = pos_;
    accept("NATURAL");
    if (accept("LEFT") || accept("RIGHT") || accept("FULL")) {
      accept("OUTER");
    } else {
      if (!accept("INNER")) accept("CROSS");
    }
    if (accept("JOIN")) return true;
    pos_ = save;
    return false;
  }

  void parse_from(Select& s) {
    s.from.push_back(parse_table_ref());
    for (;;) {
      if (accept_symbol(",")) {
        s.from.push_back(parse_table_ref());
      } else if (accept_join()) {
        s.from.push_back(parse_table_ref());
        if (accept("ON")) {
          s.join_conditions.push_back(parse_expr());
        } else if (accept("USING")) {
          parse_using(s);
        }
      } else {
        break;
      }
    }
  }

  // JOIN t USING (c) becomes prev.c = t.c.
  void parse_using(Select& s) {
    const TableRef& right = s.from.back();
    const TableRef& left = s.from[s.from.size() - 2];
    const auto ref_name = [](const TableRef& r) { return r.alias.empty() ? r.name : r.alias; };
    expect_symbol("(");
    do {
      const std::size_t offset = peek().offset;
      const std::string col = expect_identifier("column name");
      Expr eq{Expr::Kind::kComparison, "="};
      eq.offset = offset;
      Expr l{Expr::Kind::kColumn, col, ref_name(left)};
      Expr r{Expr::Kind::kColumn, col, ref_name(right)};
      eq.args = {std::move(l), std::move(r)};
      s.join_conditions.push_back(std::move(eq));
    } while (accept_symbol(","));
    expect_symbol(")");
  }

  // Boolean levels: OR < AND < NOT < predicate.
  Expr parse_expr() { return parse_or(); }

  Expr parse_or() {
    Expr lhs = parse_and();
    if (!peek().is("OR")) return lhs;
    Expr node{Expr::Kind::kOr};
    node.offset = lhs.offset;
    node.args.push_back(std::move(lhs));
    while (accept("OR")) node.args.push_back(parse_and());
    return node;
  }

  Expr parse_and() {
    Expr lhs = parse_not();
    if (!peek().is("AND")) return lhs;
    Expr node{Expr::Kind::kAnd};
    node.offset = lhs.offset;
    node.args.push_back(std::move(lhs));
    while (accept("AND")) node.args.push_back(parse_not());
    return node;
  }

  Expr parse_not() {
    if (peek().is("NOT")) {
      const std::size_t offset = advance().offset;
      if (peek().is("EXISTS")) {
        Expr e = parse_exists();
        e.negated = !e.negated;
        e.offset = offset;
        return e;
      }
      Expr node{Expr::Kind::kNot};
      node.offset = offset;
      node.args.push_back(parse_not());
      return node;
    }
    return parse_predicate();
  }

  Expr parse_exists() {
    Expr e{Expr::Kind::kExists};
    e.offset = advance().offset;
    expect_symbol("(");
    if (!peek().is("SELECT")) fail({"SELECT"});
    e.subquery = parse_subquery_body();
    expect_symbol(")");
    return e;
  }

  Expr parse_predicate() {
    if (peek().is("EXISTS")) return parse_exists();
    Expr lhs = parse_additive();
    const std::size_t offset = lhs.offset;

    const std::size_t save = pos_;
    const bool negated = accept("NOT");
    if (accept("BETWEEN")) {
      Expr e{Expr::Kind::kBetween};
      e.offset = offset;
      e.negated = negated;
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_additive());
      expect("AND");
      e.args.push_back(parse_additive());
      return e;
    }
    if (accept("IN")) {
      expect_symbol("(");
      if (peek().is("SELECT")) {
        Expr e{Expr::Kind::kInSubquery};
        e.offset = offset;
        e.negated = negated;
        e.args.push_back(std::move(lhs));
        e.subquery = parse_subquery_body();
        expect_symbol(")");
        return e;
      }
      Expr e{Expr::Kind::kInList};
      e.offset = offset;
      e.negated = negated;
      e.args.push_back(std::move(lhs));
      do {
        e.args.push_back(parse_additive());
      } while (accept_symbol(","));
      expect_symbol(")");
      return e;
    }
    if (accept("LIKE")) {
      Expr e{Expr::Kind::kComparison, "like"};
      e.offset = offset;
      e.negated = negated;
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_additive());
      return e;
    }
    if (negated) {
      pos_ = save;
      fail({"BETWEEN", "IN", "LIKE"});
    }
    if (accept("IS")) {
      const bool is_not = accept("NOT");
      if (accept("NULL")) {
        Expr e{Expr::Kind::kIsNull};
        e.offset = offset;
        e.negated = is_not;
        e.args.push_back(std::move(lhs));
        return e;
      }
      Expr e{Expr::Kind::kComparison, "is"};
      e.offset = offset;
      e.negated = is_not;
      e.args.push_back(std::move(lhs));
      e.args.push_back(parse_additive());
      return e;
    }
    static constexpr std::string_view kOps[] = {"=", "==", "!=", "<>", "<", ">", "<=", ">="};
    for (std::string_view op : kOps) {
      if (peek().is_symbol(op)) {
        advance();
        Expr e{Expr::Kind::kComparison};
        e.name = op == "==" ? "=" : op == "<>" ? "!=" : std::string(op);
        e.offset = offset;
        e.args.push_back(std::move(lhs));
        e.args.push_back(parse_additive());
        return e;
      }
    }
    return lhs;
  }

  Expr binary(std::string op, Expr lhs, Expr rhs) {
    Expr e{Expr::Kind::kArithmetic, std::move(op)};
    e.offset = lhs.offset;
    e.args.push_back(std::move(lhs));
    e.args.push_back(std::move(rhs));
    return e;
  }

  Expr parse_additive() {
    Expr lhs = parse_multiplicative();
    while (peek().is_symbol("+") || peek().is_symbol("-")) {
      std::string op = advance().text;
      lhs = binary(std::move(op), std::move(lhs), parse_multiplicative());
    }
    return lhs;
  }

  Expr parse_multiplicative() {
    Expr lhs = parse_unary();
    while (peek().is_symbol("*") || peek().is_symbol("/") || peek().is_symbol("%")) {
      std::string op = advance().text;
      lhs = binary(std::move(op), std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek().is_symbol("-")) {
      Expr e{Expr::Kind::kNegate};
      e.offset = advance().offset;
      e.args.push_back(parse_unary());
      return e;
    }
    if (accept_symbol("+")) return parse_unary();
    return parse_concat();
  }

  Expr parse_concat() {
    Expr lhs = parse_primary();
    while (accept_symbol("||")) lhs = binary("||", std::move(lhs), parse_primary());
    return lhs;
  }

  Expr parse_primary() {
    const SqlToken& t = peek();
    Expr e;
    e.offset = t.offset;
    if (t.kind == TokenKind::kNumber || t.kind == TokenKind::kString) {
      e.kind = Expr::Kind::kLiteral;
      e.name = advance().text;
      return e;
    }
    if (t.is("NULL")) {
      advance();
      e.kind = Expr::Kind::kNull;
      return e;
    }
    if (t.is("TRUE") || t.is("FALSE")) {
      e.kind = Expr::Kind::kLiteral;
      e.name = advance().text;
      return e;
    }
    if (t.is_symbol("(")) {
      advance();
      if (peek().is("SELECT")) {
        e.kind = Expr::Kind::kSubquery;
        e.subquery = parse_subquery_body();
        expect_symbol(")");
        return e;
      }
      Expr inner = parse_expr();
      expect_symbol(")");
      return inner;
    }
    if (identifier(t) || (t.kind == TokenKind::kWord && peek(1).is_symbol("(") && !t.is("IN") &&
                          !t.is("EXISTS") && !t.is("USING"))) {
      std::string name = advance().text;
      if (peek().is_symbol("(") && t.kind == TokenKind::kWord) {
        advance();
        e.kind = Expr::Kind::kFunction;
        e.name = std::move(name);
        if (accept_symbol(")")) return e;
        if (peek().is_symbol("*")) {
          Expr star{Expr::Kind::kStar};
          star.offset = advance().offset;
          e.args.push_back(std::move(star));
        } else {
          if (accept("DISTINCT")) {
            e.distinct = true;
          } else {
            accept("ALL");
          }
          do {
            e.args.push_back(parse_expr());
          } while (accept_symbol(","));
        }
        expect_symbol(")");
        return e;
      }
      if (accept_symbol(".")) {
        if (peek().is_symbol("*")) {
          advance();
          e.kind = Expr::Kind::kStar;
          e.qualifier = std::move(name);
          return e;
        }
        e.kind = Expr::Kind::kColumn;
        e.qualifier = std::move(name);
        e.name = expect_identifier("column name");
        return e;
      }
      e.kind = Expr::Kind::kColumn;
      e.name = std::move(name);
      return e;
    }
    fail({"expression"});
  }

  std::vector<SqlToken> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string_view to_string(SetOp op) {
  switch (op) {
    case SetOp::kUnion: return "union";
    case SetOp::kUnionAll: return "union all";
    case SetOp::kIntersect: return "intersect";
    case SetOp::kExcept: return "except";
  }
  return "?";
}

Select parse_select(std::string_view sql) { return Parser(sql).parse_statement(); }

bool is_reserved_word(std::string_view word) {
  std::string upper(word);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return std::find(kReserved.begin(), kReserved.end(), upper) != kReserved.end();
}

bool is_aggregate_function(std::string_view lowercase_name) {
  return lowercase_name == "count" || lowercase_name == "sum" || lowercase_name == "avg" ||
         lowercase_name == "min" || lowercase_name == "max";
}

}  // namespace gtr::sql
