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

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gtr/sql/lexer.hpp"

namespace gtr::sql {

struct Select;

struct Expr {
  enum class Kind {
    kColumn,      // qualifier.name
    kStar,        // * or qualifier.*
    kLiteral,     // number or string; name holds the raw text
    kNull,
    kFunction,    // name(args), distinct flag
    kNegate,      // unary minus
    kArithmetic,  // name is one of + - * / % ||
    kComparison,  // name is one of = != < > <= >= like is; negated for NOT LIKE / IS NOT
    kBetween,     // args: operand, low, high
    kInList,      // args: operand, items...
    kInSubquery,  // args: operand
    kExists,
    kIsNull,
    kSubquery,
    kNot,
    kAnd,
    kOr,
  };

  Kind kind = Kind::kLiteral;
  std::string name;
  std::string qualifier;
  bool distinct = false;
  bool negated = false;
  std::vector<Expr> args;
  std::shared_ptr<const Select> subquery;
  std::size_t offset = 0;
};

struct TableRef {
  std::string name;  // empty for a derived table
  std::shared_ptr<const Select> subquery;
  std::string alias;
};

struct SelectItem {
  Expr expr;
  std::string alias;
};

struct OrderItem {
  Expr expr;
  bool descending = false;
};

enum class SetOp { kUnion, kUnionAll, kIntersect, kExcept };
std::string_view to_string(SetOp op);

// One SELECT core plus an optional right-nested compound, mirroring the
// shape Spider's reference parser produces.
struct Select {
  bool distinct = false;
  std::vector<SelectItem> items;
  std::vector<TableRef> from;
  std::vector<Expr> join_conditions;  // ON / USING predicates, in order
  std::optional<Expr> where;
  std::vector<Expr> group_by;
  std::optional<Expr> having;
  std::vector<OrderItem> order_by;
  bool has_limit = false;
  std::optional<SetOp> set_op;
  std::shared_ptr<const Select> set_rhs;
};

// Parses one SELECT statement (optionally ';'-terminated) of the Spider
// query grammar. Throws SqlParseError.
Select parse_select(std::string_view sql);

bool is_aggregate_function(std::string_view lowercase_name);

// Keywords that cannot be used as bare identifiers or aliases.
bool is_reserved_word(std::string_view word);

}  // namespace gtr::sql
