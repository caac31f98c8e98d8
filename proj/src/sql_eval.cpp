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

#include "gtr/sql_eval.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "gtr/error.hpp"
#include "gtr/gtr_t_pipeline.hpp"
#include "gtr/sql/lexer.hpp"

namespace gtr {
namespace {

constexpr double kRelativeTolerance = 1e-6;

// Above this many rows the quadratic matching fallback is skipped.
constexpr std::size_t kGreedyMatchLimit = 4000;

bool is_number(const Value& v) {
  return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

double as_double(const Value& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
  return std::get<double>(v);
}

// Rank used to sort values of different types apart.
int type_rank(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return 0;
  if (is_number(v)) return 1;
  if (std::holds_alternative<std::string>(v)) return 2;
  return 3;
}

bool value_less(const Value& a, const Value& b) {
  const int ra = type_rank(a), rb = type_rank(b);
  if (ra != rb) return ra < rb;
  switch (ra) {
    case 1:
      return as_double(a) < as_double(b);
    case 2:
      return std::get<std::string>(a) < std::get<std::string>(b);
    case 3:
      return std::get<Blob>(a).bytes < std::get<Blob>(b).bytes;
    default:
      return false;
  }
}

bool row_less(const std::vector<Value>& a, const std::vector<Value>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), value_less);
}

bool rows_equal(const std::vector<Value>& a, const std::vector<Value>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), values_equal);
}

ResultSet run_query(std::string_view sql, const Database& db, const ExecLimits& limits) {
  return execute_sql(SqlQuery{std::string(sql)}, db, limits);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

nlohmann::ordered_json stats_json(const LevelStats& s) {
  return {{"count", s.count}, {"em", s.em}, {"ex", s.ex}};
}

std::string fixed3(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << v;
  return os.str();
}

}  // namespace

std::string_view to_string(HardnessLevel level) {
  switch (level) {
    case HardnessLevel::kEasy:
      return "easy";
    case HardnessLevel::kMedium:
      return "medium";
    case HardnessLevel::kHard:
      return "hard";
    case HardnessLevel::kExtra:
      return "extra";
  }
  return "extra";
}

HardnessLevel classify_hardness(const sql::ComponentCounts& c) {
  std::size_t comp1 = 0;
  comp1 += c.has_where ? 1 : 0;
  comp1 += c.group_by > 0 ? 1 : 0;
  comp1 += c.has_order_by ? 1 : 0;
  comp1 += c.has_limit ? 1 : 0;
  comp1 += c.table_units > 0 ? c.table_units - 1 : 0;
  comp1 += c.or_connectives + c.like_predicates;

  const std::size_t comp2 = c.nested;

  std::size_t others = 0;
  others += c.aggregates > 1 ? 1 : 0;
  others += c.select_columns > 1 ? 1 : 0;
  others += c.where_predicates > 1 ? 1 : 0;
  others += c.group_by > 1 ? 1 : 0;

  if (comp1 <= 1 && others == 0 && comp2 == 0) return HardnessLevel::kEasy;
  if ((others <= 2 && comp1 <= 1 && comp2 == 0) || (comp1 <= 2 && others < 2 && comp2 == 0)) {
    return HardnessLevel::kMedium;
  }
  if ((others > 2 && comp1 <= 2 && comp2 == 0) || (comp1 > 2 && comp1 <= 3 && others <= 2 && comp2 == 0) ||
      (comp1 <= 1 && others == 0 && comp2 <= 1)) {
    return HardnessLevel::kHard;
  }
  return HardnessLevel::kExtra;
}

HardnessLevel classify_hardness(const sql::ClauseSets& query) { return classify_hardness(query.counts); }

sql::Schema schema_from_database(const Database& db) {
  sql::Schema schema;
  for (const TableProfile& p : profile_tables(db, 0)) {
    std::vector<std::string> names;
    for (const Column& c : p.columns) names.push_back(c.name);
    schema.add_table(p.name, names);
  }
  return schema;
}

EmResult exact_set_match(std::string_view pred, std::string_view gold, const sql::Schema* schema) {
  EmResult r;
  sql::ClauseSets g, p;
  try {
    g = sql::parse_sql(gold, schema);
  } catch (const sql::SqlParseError& e) {
    r.error = std::string("gold: ") + e.what();
    return r;
  }
  try {
    p = sql::parse_sql(pred, schema);
  } catch (const sql::SqlParseError& e) {
    r.error = std::string("pred: ") + e.what();
    return r;
  }
  r.clauses = sql::compare_clauses(p, g);
  r.match = r.clauses.all();
  return r;
}

ExecLimits evaluation_limits() {
  ExecLimits limits;
  limits.row_limit = 100000;
  return limits;
}

bool values_equal(const Value& a, const Value& b) {
  if (is_number(a) && is_number(b)) {
    if (std::holds_alternative<std::int64_t>(a) && std::holds_alternative<std::int64_t>(b)) {
      return std::get<std::int64_t>(a) == std::get<std::int64_t>(b);
    }
    const double x = as_double(a), y = as_double(b);
    if (x == y) return true;
    return std::abs(x - y) <= kRelativeTolerance * std::max(std::abs(x), std::abs(y));
  }
  return a == b;
}

bool results_equal(const ResultSet& pred, const ResultSet& gold, bool ordered) {
  if (pred.rows.size() != gold.rows.size()) return false;
  if (pred.columns.size() != gold.columns.size()) return false;
  if (ordered) return std::equal(pred.rows.begin(), pred.rows.end(), gold.rows.begin(), rows_equal);

  auto p = pred.rows;
  auto g = gold.rows;
  std::sort(p.begin(), p.end(), row_less);
  std::sort(g.begin(), g.end(), row_less);
  if (std::equal(p.begin(), p.end(), g.begin(), rows_equal)) return true;
  if (p.size() > kGreedyMatchLimit) return false;

  // Tolerance can reorder near-equal numbers; match greedily instead.
  std::vector<bool> used(g.size(), false);
  for (const auto& row : p) {
    bool found = false;
    for (std::size_t j = 0; j < g.size() && !found; ++j) {
      if (!used[j] && rows_equal(row, g[j])) used[j] = found = true;
    }
    if (!found) return false;
  }
  return true;
}

bool has_top_level_order_by(std::string_view sql) {
  std::vector<sql::SqlToken> tokens;
  try {
    tokens = sql::lex(sql);
  } catch (const sql::SqlParseError&) {
    return false;
  }
  int depth = 0;
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.is_symbol("(")) ++depth;
    if (t.is_symbol(")")) --depth;
    if (depth == 0 && t.is("ORDER") && tokens[i + 1].is("BY")) return true;
  }
  return false;
}

namespace {

bool execution_match(std::string_view pred, std::string_view gold, const Database& db, const ExecLimits& limits,
                     std::string* pred_error) {
  ResultSet g;
  try {
    g = run_query(gold, db, limits);
  } catch (const Error& e) {
    throw Error(Errc::kEvalError, std::string("gold query failed: ") + e.what());
  }
  ResultSet p;
  try {
    p = run_query(pred, db, limits);
  } catch (const Error& e) {
    if (pred_error) *pred_error = std::string("pred query failed: ") + e.what();
    return false;
  }
  return results_equal(p, g, has_top_level_order_by(gold));
}

}  // namespace

bool execution_accuracy(std::string_view pred, std::string_view gold, const Database& db,
                        const ExecLimits& limits) {
  return execution_match(pred, gold, db, limits, nullptr);
}

std::filesystem::path resolve_database(const std::filesystem::path& db_dir, std::string_view db_id) {
  const std::string id(db_id);
  for (const auto& candidate : {db_dir / id / (id + ".sqlite"), db_dir / (id + ".sqlite"), db_dir / (id + ".db")}) {
    if (std::filesystem::is_regular_file(candidate)) return candidate;
  }
  throw Error(Errc::kInvalidInput, "no database file for db_id '" + id + "' under " + db_dir.string());
}

SqlEvalReport evaluate_suite(const std::vector<SuitePair>& pairs, const std::filesystem::path& db_dir,
                             std::size_t jobs) {
  if (pairs.empty()) throw Error(Errc::kInvalidInput, "empty evaluation suite");
  std::vector<std::filesystem::path> paths;
  paths.reserve(pairs.size());
  for (const auto& p : pairs) paths.push_back(resolve_database(db_dir, p.db_id));

  SqlEvalReport report;
  report.items.resize(pairs.size());

  auto evaluate_one = [&](std::size_t i) {
    SuiteItemResult& r = report.items[i];
    r.index = i;
    r.pair = pairs[i];
    std::optional<Database> db;
    std::optional<sql::Schema> schema;
    try {
      db.emplace(Database::open_readonly(paths[i]));
      schema = schema_from_database(*db);
    } catch (const Error& e) {
      r.em_error = r.ex_error = e.what();
    }
    const EmResult em = exact_set_match(r.pair.pred, r.pair.gold, schema ? &*schema : nullptr);
    r.em = em.match;
    if (r.em_error.empty()) r.em_error = em.error;
    try {
      r.hardness = classify_hardness(sql::parse_sql(r.pair.gold, schema ? &*schema : nullptr));
    } catch (const sql::SqlParseError&) {
    }
    if (!db) return;
    try {
      r.ex = execution_match(r.pair.pred, r.pair.gold, *db, evaluation_limits(), &r.ex_error);
    } catch (const Error& e) {
      r.ex_error = e.what();
    }
  };

  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) evaluate_one(i);
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  std::array<std::size_t, 4> em_hits{}, ex_hits{};
  std::size_t em_total = 0, ex_total = 0;
  for (const auto& r : report.items) {
    em_total += r.em;
    ex_total += r.ex;
    if (!r.hardness) continue;
    const auto h = static_cast<std::size_t>(*r.hardness);
    ++report.by_hardness[h].count;
    em_hits[h] += r.em;
    ex_hits[h] += r.ex;
  }
  const auto n = static_cast<double>(pairs.size());
  report.overall = LevelStats{pairs.size(), static_cast<double>(em_total) / n, static_cast<double>(ex_total) / n};
  for (std::size_t h = 0; h < 4; ++h) {
    auto& s = report.by_hardness[h];
    if (s.count == 0) continue;
    s.em = static_cast<double>(em_hits[h]) / static_cast<double>(s.count);
    s.ex = static_cast<double>(ex_hits[h]) / static_cast<double>(s.count);
  }
  return report;
}

std::vector<SuitePair> read_suite_files(const std::filesystem::path& gold, const std::filesystem::path& pred) {
  struct Entry {
    std::size_t line;
    std::string sql;
    std::string db_id;
  };
  auto read = [](const std::filesystem::path& path, bool require_db) {
    std::vector<Entry> out;
    const auto lines = read_lines(path);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (blank(lines[i])) continue;
      const auto tab = lines[i].rfind('\t');
      Entry e{i + 1, lines[i], ""};
      if (tab != std::string::npos) {
        e.sql = lines[i].substr(0, tab);
        e.db_id = lines[i].substr(tab + 1);
      }
      if (require_db && e.db_id.empty()) {
        throw Error(Errc::kInvalidInput,
                    path.string() + ":" + std::to_string(i + 1) + ": expected SQL<TAB>db_id");
      }
      out.push_back(std::move(e));
    }
    return out;
  };
  const auto g = read(gold, true);
  const auto p = read(pred, false);
  if (g.size() != p.size()) {
    throw Error(Errc::kInvalidInput, "gold has " + std::to_string(g.size()) + " queries but pred has " +
                                         std::to_string(p.size()));
  }
  std::vector<SuitePair> pairs;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!p[i].db_id.empty() && p[i].db_id != g[i].db_id) {
      throw Error(Errc::kInvalidInput, pred.string() + ":" + std::to_string(p[i].line) + ": db_id '" +
                                           p[i].db_id + "' differs from gold '" + g[i].db_id + "'");
    }
    pairs.push_back(SuitePair{"", p[i].sql, g[i].sql, g[i].db_id});
  }
  return pairs;
}

nlohmann::ordered_json to_json(const SuiteItemResult& item) {
  nlohmann::ordered_json j;
  j["index"] = item.index;
  if (!item.pair.question.empty()) j["question"] = item.pair.question;
  j["db_id"] = item.pair.db_id;
  j["pred"] = item.pair.pred;
  j["gold"] = item.pair.gold;
  j["hardness"] = item.hardness ? nlohmann::ordered_json(to_string(*item.hardness)) : nullptr;
  j["em"] = item.em;
  j["ex"] = item.ex;
  if (!item.em_error.empty()) j["em_error"] = item.em_error;
  if (!item.ex_error.empty()) j["ex_error"] = item.ex_error;
  return j;
}

nlohmann::ordered_json to_json(const SqlEvalReport& report) {
  nlohmann::ordered_json levels;
  for (HardnessLevel h : kHardnessLevels) levels[std::string(to_string(h))] = stats_json(report.level(h));
  return {{"summary", "sql"}, {"overall", stats_json(report.overall)}, {"by_hardness", levels}};
}

std::string report_jsonl(const SqlEvalReport& report) {
  std::string out;
  for (const auto& item : report.items) out += to_json(item).dump() + "\n";
  out += to_json(report).dump() + "\n";
  return out;
}

std::string summary_table(const SqlEvalReport& report) {
  std::ostringstream os;
  auto row = [&](std::string_view name, const LevelStats& s) {
    os << std::left << std::setw(8) << name << std::right << std::setw(7) << s.count << std::setw(8)
       << fixed3(s.em) << std::setw(8) << fixed3(s.ex) << "\n";
  };
  os << std::left << std::setw(8) << "level" << std::right << std::setw(7) << "count" << std::setw(8) << "EM"
     << std::setw(8) << "EX" << "\n";
  for (HardnessLevel h : kHardnessLevels) row(to_string(h), report.level(h));
  row("all", report.overall);
  return os.str();
}

}  // namespace gtr
