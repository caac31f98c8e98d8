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

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gtr/sql/parser.hpp"

namespace gtr::sql {

// Lowercased table -> column names of one database, tables in declaration
// order. Used to qualify bare column references.
struct Schema {
  std::vector<std::string> table_order;
  std::map<std::string, std::set<std::string>> columns;

  void add_table(std::string_view table, const std::vector<std::string>& column_names);
  bool has_column(std::string_view table, std::string_view column) const;
};

// Raw component counts behind hardness classification. They follow the
// counting rules of Spider's evaluation script; see docs/hardness.md.
struct ComponentCounts {
  bool has_where = false;
  std::size_t where_predicates = 0;
  std::size_t group_by = 0;
  bool has_order_by = false;
  bool has_limit = false;
  std::size_t table_units = 0;
  std::size_t or_connectives = 0;   // across join conditions, WHERE and HAVING
  std::size_t like_predicates = 0;  // across join conditions, WHERE and HAVING
  std::size_t nested = 0;           // subquery operands in predicates + set operation
  std::size_t aggregates = 0;
  std::size_t select_columns = 0;

  friend bool operator==(const ComponentCounts&, const ComponentCounts&) = default;
};

struct OrderTerm {
  std::string expr;
  bool descending = false;
  friend bool operator==(const OrderTerm&, const OrderTerm&) = default;
};

struct SetOperation;

// Normal form compared by Exact-Set-Match. Every term is a canonical SQL
// fragment: identifiers lowercased, table aliases replaced by their tables,
// literals replaced by the placeholder 'VALUE', operands of = and != sorted,
// AND/OR operands sorted. Nested queries appear inside terms in their
// serialized normal form and are also listed in `subqueries`.
struct ClauseSets {
  bool distinct = false;
  std::multiset<std::string> select;
  std::multiset<std::string> from;
  std::multiset<std::string> join_on;
  std::multiset<std::string> where;     // top-level conjuncts
  std::multiset<std::string> group_by;
  std::multiset<std::string> having;    // top-level conjuncts
  std::vector<OrderTerm> order_by;
  bool limit = false;
  std::vector<SetOperation> set_ops;  // at most one; its operand may chain further
  std::vector<ClauseSets> subqueries;  // predicate and FROM subqueries, textual order
  ComponentCounts counts;
};

struct SetOperation {
  SetOp op;
  ClauseSets operand;
};

inline constexpr std::string_view kValuePlaceholder = "'VALUE'";

ClauseSets normalize(const Select& select, const Schema* schema = nullptr);

// parse_select + normalize. Throws SqlParseError.
ClauseSets parse_sql(std::string_view sql, const Schema* schema = nullptr);

// SQL text whose parse reproduces the same ClauseSets.
std::string serialize(const ClauseSets& clauses);

struct ClauseComparison {
  bool select = true;
  bool from = true;
  bool where = true;
  bool group_by = true;
  bool having = true;
  bool order_by = true;
  bool limit = true;
  bool set_ops = true;

  bool all() const {
    return select && from && where && group_by && having && order_by && limit && set_ops;
  }
};

ClauseComparison compare_clauses(const ClauseSets& pred, const ClauseSets& gold);

}  // namespace gtr::sql
