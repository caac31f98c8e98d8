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

#include <algorithm>
#include <cctype>

namespace gtr::sql {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Bare when it lexes back as the same word, otherwise `quoted`.
std::string ident(std::string_view name) {
  bool plain = !name.empty() && (std::islower(static_cast<unsigned char>(name[0])) || name[0] == '_');
  for (char c : name) {
    const auto uc = static_cast<unsigned char>(c);
    plain = plain && (std::islower(uc) || std::isdigit(uc) || c == '_');
  }
  if (plain && !is_reserved_word(name)) return std::string(name);
  std::string out = "`";
  for (char c : name) {
    if (c == '`') out += '`';
    out += c;
  }
  out += '`';
  return out;
}

std::string join(const auto& items, std::string_view sep) {
  std::string out;
  bool first = true;
  for (const auto& item : items) {
    if (!first) out += sep;
    first = false;
    out += item;
  }
  return out;
}

bool is_boolean(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kComparison:
    case Expr::Kind::kBetween:
    case Expr::Kind::kInList:
    case Expr::Kind::kInSubquery:
    case Expr::Kind::kExists:
    case Expr::Kind::kIsNull:
    case Expr::Kind::kNot:
    case Expr::Kind::kAnd:
    case Expr::Kind::kOr:
      return true;
    default:
      return false;
  }
}

bool is_aggregate(const Expr& e) {
  return e.kind == Expr::Kind::kFunction && is_aggregate_function(lower(e.name));
}

void flatten(const Expr& e, Expr::Kind kind, std::vector<const Expr*>& out) {
  if (e.kind == kind) {
    for (const Expr& a : e.args) flatten(a, kind, out);
  } else {
    out.push_back(&e);
  }
}

// Predicate leaves of a boolean tree plus the connective counts between them.
struct Leaves {
  std::vector<const Expr*> predicates;
  std::size_t ands = 0;
  std::size_t ors = 0;
};

void collect_leaves(const Expr& e, Leaves& out) {
  if (e.kind == Expr::Kind::kAnd || e.kind == Expr::Kind::kOr) {
    (e.kind == Expr::Kind::kAnd ? out.ands : out.ors) += e.args.size() - 1;
    for (const Expr& a : e.args) collect_leaves(a, out);
  } else {
    out.predicates.push_back(&e);
  }
}

bool negated_predicate(const Expr& e) { return e.kind == Expr::Kind::kNot || e.negated; }

bool like_predicate(const Expr& e) {
  return e.kind == Expr::Kind::kComparison && e.name == "like";
}

std::size_t subquery_operands(const Expr& e) {
  std::size_t n = e.subquery && e.kind != Expr::Kind::kSubquery ? 1 : 0;
  for (const Expr& a : e.args) {
    if (a.kind == Expr::Kind::kSubquery) ++n;
    if (e.kind == Expr::Kind::kNot) n += subquery_operands(a);
  }
  return n;
}

struct ScopeTable {
  std::string name;       // lowercased table name; empty when derived
  std::string alias;      // lowercased, as written
  std::string canonical;  // positional name of a derived table
};

struct Scope {
  std::vector<ScopeTable> tables;
  const Scope* parent = nullptr;
  std::map<std::string, std::string> select_aliases;
};

enum class AliasMode { kTablesOnly, kSelectAliases };

class Normalizer {
 public:
  explicit Normalizer(const Schema* schema) : schema_(schema) {}

  ClauseSets run(const Select& s, const Scope* parent) {
    ClauseSets out;
    Scope scope;
    scope.parent = parent;

    std::vector<ClauseSets> from_subs, select_subs, join_subs, where_subs, group_subs, having_subs,
        order_subs;

    // Derived tables are renamed _d1, _d2, ... so their alias spelling
    // does not matter.
    std::size_t derived = 0;
    for (const TableRef& ref : s.from) {
      if (ref.subquery) {
        ClauseSets sub = run(*ref.subquery, parent);
        std::string canonical = "_d" + std::to_string(++derived);
        out.from.insert("(" + serialize(sub) + ") as " + canonical);
        from_subs.push_back(std::move(sub));
        scope.tables.push_back(ScopeTable{"", lower(ref.alias), std::move(canonical)});
      } else {
        out.from.insert(ident(lower(ref.name)));
        scope.tables.push_back(ScopeTable{lower(ref.name), lower(ref.alias), ""});
      }
    }

    out.distinct = s.distinct;
    for (const SelectItem& item : s.items) {
      std::string term = render(item.expr, scope, AliasMode::kTablesOnly, select_subs);
      if (!item.alias.empty()) scope.select_aliases.emplace(lower(item.alias), term);
      out.select.insert(std::move(term));
    }
    for (const Expr& cond : s.join_conditions) {
      for (auto& t : conjuncts(cond, scope, AliasMode::kTablesOnly, join_subs)) out.join_on.insert(std::move(t));
    }
    if (s.where) {
      for (auto& t : conjuncts(*s.where, scope, AliasMode::kTablesOnly, where_subs)) out.where.insert(std::move(t));
    }
    for (const Expr& g : s.group_by) out.group_by.insert(render(g, scope, AliasMode::kSelectAliases, group_subs));
    if (s.having) {
      for (auto& t : conjuncts(*s.having, scope, AliasMode::kSelectAliases, having_subs)) {
        out.having.insert(std::move(t));
      }
    }
    for (const OrderItem& o : s.order_by) {
      out.order_by.push_back(
          OrderTerm{render(o.expr, scope, AliasMode::kSelectAliases, order_subs), o.descending});
    }
    out.limit = s.has_limit;
    if (s.set_op && s.set_rhs) out.set_ops.push_back(SetOperation{*s.set_op, run(*s.set_rhs, parent)});

    for (auto* group : {&select_subs, &from_subs, &join_subs, &where_subs, &group_subs, &having_subs,
                        &order_subs}) {
      for (auto& sub : *group) out.subqueries.push_back(std::move(sub));
    }
    out.counts = count_components(s);
    return out;
  }

 private:
  static ComponentCounts count_components(const Select& s) {
    ComponentCounts c;
    c.select_columns = s.items.size();
    c.table_units = s.from.size();
    c.group_by = s.group_by.size();
    c.has_order_by = !s.order_by.empty();
    c.has_limit = s.has_limit;
    c.has_where = s.where.has_value();

    Leaves join_leaves, where_leaves, having_leaves;
    for (const Expr& cond : s.join_conditions) collect_leaves(cond, join_leaves);
    if (s.where) collect_leaves(*s.where, where_leaves);
    if (s.having) collect_leaves(*s.having, having_leaves);
    c.where_predicates = where_leaves.predicates.size();

    for (const Leaves* l : {&join_leaves, &where_leaves, &having_leaves}) {
      c.or_connectives += l->ors;
      for (const Expr* p : l->predicates) {
        if (like_predicate(*p)) ++c.like_predicates;
        c.nested += subquery_operands(*p);
      }
    }
    if (s.set_op) ++c.nested;

    for (const SelectItem& item : s.items) c.aggregates += is_aggregate(item.expr) ? 1 : 0;
    for (const Expr* p : where_leaves.predicates) c.aggregates += negated_predicate(*p) ? 1 : 0;
    // A bare select alias counts as the expression it names.
    const auto aggregate_or_alias = [&s](const Expr& e) {
      if (is_aggregate(e)) return true;
      if (e.kind != Expr::Kind::kColumn || !e.qualifier.empty()) return false;
      for (const SelectItem& item : s.items) {
        if (!item.alias.empty() && lower(item.alias) == lower(e.name)) return is_aggregate(item.expr);
      }
      return false;
    };
    for (const Expr& g : s.group_by) c.aggregates += aggregate_or_alias(g) ? 1 : 0;
    for (const OrderItem& o : s.order_by) {
      if (o.expr.kind == Expr::Kind::kArithmetic) {
        for (const Expr& a : o.expr.args) c.aggregates += aggregate_or_alias(a) ? 1 : 0;
      } else {
        c.aggregates += aggregate_or_alias(o.expr) ? 1 : 0;
      }
    }
    for (const Expr* p : having_leaves.predicates) c.aggregates += negated_predicate(*p) ? 1 : 0;
    c.aggregates += having_leaves.ands + having_leaves.ors;
    return c;
  }

  std::string resolve_qualifier(const std::string& q, const Scope& scope) const {
    for (const Scope* s = &scope; s; s = s->parent) {
      for (const ScopeTable& t : s->tables) {
        if (!t.alias.empty() && t.alias == q) return t.name.empty() ? t.canonical : t.name;
      }
      for (const ScopeTable& t : s->tables) {
        if (!t.name.empty() && t.name == q) return t.name;
      }
    }
    return q;
  }

  std::string column(const Expr& e, const Scope& scope, AliasMode mode) const {
    const std::string name = lower(e.name);
    if (!e.qualifier.empty()) return ident(resolve_qualifier(lower(e.qualifier), scope)) + "." + ident(name);
    if (mode == AliasMode::kSelectAliases) {
      if (const auto it = scope.select_aliases.find(name); it != scope.select_aliases.end()) return it->second;
    }
    if (schema_) {
      for (const Scope* s = &scope; s; s = s->parent) {
        for (const ScopeTable& t : s->tables) {
          if (!t.name.empty() && schema_->has_column(t.name, name)) return ident(t.name) + "." + ident(name);
        }
      }
    }
    return ident(name);
  }

  std::vector<std::string> conjuncts(const Expr& e, const Scope& scope, AliasMode mode,
                                     std::vector<ClauseSets>& subs) {
    std::vector<const Expr*> parts;
    flatten(e, Expr::Kind::kAnd, parts);
    std::vector<std::string> out;
    for (const Expr* p : parts) out.push_back(render(*p, scope, mode, subs));
    return out;
  }

  std::string operand(const Expr& e, const Scope& scope, AliasMode mode, std::vector<ClauseSets>& subs) {
    std::string s = render(e, scope, mode, subs);
    if (e.kind == Expr::Kind::kAnd || (is_boolean(e) && e.kind != Expr::Kind::kOr)) return "(" + s + ")";
    return s;
  }

  std::string subquery(const Select& sub, const Scope& scope, std::vector<ClauseSets>& subs) {
    ClauseSets cs = run(sub, &scope);
    std::string text = "(" + serialize(cs) + ")";
    subs.push_back(std::move(cs));
    return text;
  }

  std::string render(const Expr& e, const Scope& scope, AliasMode mode, std::vector<ClauseSets>& subs) {
    using K = Expr::Kind;
    switch (e.kind) {
      case K::kColumn:
        return column(e, scope, mode);
      case K::kStar:
        return e.qualifier.empty() ? "*" : ident(resolve_qualifier(lower(e.qualifier), scope)) + ".*";
      case K::kLiteral:
        return std::string(kValuePlaceholder);
      case K::kNull:
        return "null";
      case K::kFunction: {
        std::vector<std::string> args;
        for (const Expr& a : e.args) args.push_back(render(a, scope, mode, subs));
        return lower(e.name) + "(" + (e.distinct ? "distinct " : "") + join(args, ", ") + ")";
      }
      case K::kNegate: {
        const Expr& inner = e.args.front();
        if (inner.kind == K::kLiteral) return std::string(kValuePlaceholder);
        std::string s = operand(inner, scope, mode, subs);
        if (inner.kind == K::kArithmetic || inner.kind == K::kNegate) s = "(" + s + ")";
        return "-" + s;
      }
      case K::kArithmetic: {
        std::string parts[2];
        for (int i = 0; i < 2; ++i) {
          parts[i] = operand(e.args[i], scope, mode, subs);
          if (e.args[i].kind == K::kArithmetic) parts[i] = "(" + parts[i] + ")";
        }
        return parts[0] + " " + e.name + " " + parts[1];
      }
      case K::kComparison: {
        std::string l = operand(e.args[0], scope, mode, subs);
        std::string r = operand(e.args[1], scope, mode, subs);
        std::string op = e.name;
        if (op == "like" || op == "is") {
          if (e.negated) op = op == "like" ? "not like" : "is not";
        } else if ((op == "=" || op == "!=") && r < l) {
          std::swap(l, r);
        }
        return l + " " + op + " " + r;
      }
      case K::kBetween:
        return operand(e.args[0], scope, mode, subs) + (e.negated ? " not between " : " between ") +
               operand(e.args[1], scope, mode, subs) + " and " + operand(e.args[2], scope, mode, subs);
      case K::kInList: {
        std::vector<std::string> items;
        for (std::size_t i = 1; i < e.args.size(); ++i) items.push_back(operand(e.args[i], scope, mode, subs));
        return operand(e.args[0], scope, mode, subs) + (e.negated ? " not in (" : " in (") +
               join(items, ", ") + ")";
      }
      case K::kInSubquery: {
        std::string lhs = operand(e.args[0], scope, mode, subs);
        return lhs + (e.negated ? " not in " : " in ") + subquery(*e.subquery, scope, subs);
      }
      case K::kExists:
        return std::string(e.negated ? "not exists " : "exists ") + subquery(*e.subquery, scope, subs);
      case K::kIsNull:
        return operand(e.args[0], scope, mode, subs) + (e.negated ? " is not null" : " is null");
      case K::kSubquery:
        return subquery(*e.subquery, scope, subs);
      case K::kNot:
        return "not (" + render(e.args.front(), scope, mode, subs) + ")";
      case K::kAnd:
      case K::kOr: {
        std::vector<const Expr*> parts;
        flatten(e, e.kind, parts);
        std::vector<std::string> rendered;
        for (const Expr* p : parts) {
          std::string s = render(*p, scope, mode, subs);
          if (p->kind == K::kAnd) s = "(" + s + ")";
          rendered.push_back(std::move(s));
        }
        std::sort(rendered.begin(), rendered.end());
        if (e.kind == K::kAnd) return join(rendered, " and ");
        return "(" + join(rendered, " or ") + ")";
      }
    }
    return {};
  }

  const Schema* schema_;
};

}  // namespace

void Schema::add_table(std::string_view table, const std::vector<std::string>& column_names) {
  const std::string name = lower(table);
  if (!columns.contains(name)) table_order.push_back(name);
  auto& cols = columns[name];
  for (const auto& c : column_names) cols.insert(lower(c));
}

bool Schema::has_column(std::string_view table, std::string_view column) const {
  const auto it = columns.find(std::string(table));
  return it != columns.end() && it->second.contains(std::string(column));
}

ClauseSets normalize(const Select& select, const Schema* schema) {
  return Normalizer(schema).run(select, nullptr);
}

ClauseSets parse_sql(std::string_view sql, const Schema* schema) {
  return normalize(parse_select(sql), schema);
}

std::string serialize(const ClauseSets& c) {
  std::string out = "select ";
  if (c.distinct) out += "distinct ";
  out += join(c.select, ", ");
  if (!c.from.empty()) {
    out += " from " + join(c.from, " join ");
    if (!c.join_on.empty()) out += " on " + join(c.join_on, " and ");
  }
  if (!c.where.empty()) out += " where " + join(c.where, " and ");
  if (!c.group_by.empty()) out += " group by " + join(c.group_by, ", ");
  if (!c.having.empty()) out += " having " + join(c.having, " and ");
  if (!c.order_by.empty()) {
    std::vector<std::string> terms;
    for (const auto& o : c.order_by) terms.push_back(o.expr + (o.descending ? " desc" : " asc"));
    out += " order by " + join(terms, ", ");
  }
  if (c.limit) out += " limit 1";
  for (const auto& op : c.set_ops) out += " " + std::string(to_string(op.op)) + " " + serialize(op.operand);
  return out;
}

ClauseComparison compare_clauses(const ClauseSets& pred, const ClauseSets& gold) {
  ClauseComparison r;
  r.select = pred.distinct == gold.distinct && pred.select == gold.select;
  r.from = pred.from == gold.from && pred.join_on == gold.join_on;
  r.where = pred.where == gold.where;
  r.group_by = pred.group_by == gold.group_by;
  r.having = pred.having == gold.having;
  r.order_by = pred.order_by == gold.order_by;
  r.limit = pred.limit == gold.limit;
  r.set_ops = pred.set_ops.size() == gold.set_ops.size();
  for (std::size_t i = 0; r.set_ops && i < pred.set_ops.size(); ++i) {
    r.set_ops = pred.set_ops[i].op == gold.set_ops[i].op &&
                compare_clauses(pred.set_ops[i].operand, gold.set_ops[i].operand).all();
  }
  return r;
}

}  // namespace gtr::sql
