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

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gtr/sql/clause_sets.hpp"
#include "gtr/sqlite_db.hpp"

namespace gtr {

enum class HardnessLevel { kEasy, kMedium, kHard, kExtra };

inline constexpr std::array<HardnessLevel, 4> kHardnessLevels = {
    HardnessLevel::kEasy, HardnessLevel::kMedium, HardnessLevel::kHard, HardnessLevel::kExtra};

std::string_view to_string(HardnessLevel level);

// Spider's component-counting rules. See docs/hardness.md.
HardnessLevel classify_hardness(const sql::ComponentCounts& counts);
HardnessLevel classify_hardness(const sql::ClauseSets& query);

// Tables and columns of an open database, for column qualification.
sql::Schema schema_from_database(const Database& db);

struct EmResult {
  bool match = false;
  sql::ClauseComparison clauses;
  std::string error;  // set when either side failed to parse
};

// Clause-wise comparison with literals anonymized. Never throws on bad SQL;
// a parse failure is a non-match with `error` naming the side.
EmResult exact_set_match(std::string_view pred, std::string_view gold, const sql::Schema* schema = nullptr);

// Limits used for evaluation runs: generous row cap, same timeout.
ExecLimits evaluation_limits();

// Numbers within 1e-6 relative tolerance, text case-sensitive, NULL == NULL.
bool values_equal(const Value& a, const Value& b);

// Row multisets, or row sequences when `ordered`.
bool results_equal(const ResultSet& pred, const ResultSet& gold, bool ordered);

// True when the statement has ORDER BY outside any parentheses.
bool has_top_level_order_by(std::string_view sql);

// Pred failures score false. A gold failure throws Errc::kEvalError.
bool execution_accuracy(std::string_view pred, std::string_view gold, const Database& db,
                        const ExecLimits& limits = evaluation_limits());

struct SuitePair {
  std::string question;
  std::string pred;
  std::string gold;
  std::string db_id;
};

struct SuiteItemResult {
  std::size_t index = 0;
  SuitePair pair;
  bool em = false;
  bool ex = false;
  std::optional<HardnessLevel> hardness;  // empty when gold does not parse
  std::string em_error;
  std::string ex_error;
};

struct LevelStats {
  std::size_t count = 0;
  double em = 0.0;
  double ex = 0.0;
};

struct SqlEvalReport {
  std::vector<SuiteItemResult> items;
  LevelStats overall;
  std::array<LevelStats, 4> by_hardness;  // indexed like kHardnessLevels

  const LevelStats& level(HardnessLevel h) const { return by_hardness[static_cast<std::size_t>(h)]; }
};

// db_dir/<id>/<id>.sqlite, then db_dir/<id>.sqlite, then db_dir/<id>.db.
// Throws Errc::kInvalidInput when none exists.
std::filesystem::path resolve_database(const std::filesystem::path& db_dir, std::string_view db_id);

// Throws InvalidInput for an empty list or an unresolvable db_id; per-item
// failures are recorded in the report. jobs == 0 uses the hardware concurrency.
SqlEvalReport evaluate_suite(const std::vector<SuitePair>& pairs, const std::filesystem::path& db_dir,
                             std::size_t jobs = 0);

// Gold lines are "SQL<TAB>db_id"; pred lines are "SQL" with an optional
// "<TAB>db_id". Blank lines are skipped in both files.
std::vector<SuitePair> read_suite_files(const std::filesystem::path& gold, const std::filesystem::path& pred);

nlohmann::ordered_json to_json(const SuiteItemResult& item);
nlohmann::ordered_json to_json(const SqlEvalReport& report);  // aggregates only

// One JSON object per item, then one summary object.
std::string report_jsonl(const SqlEvalReport& report);

// Rows easy/medium/hard/extra/all with count, EM and EX columns.
std::string summary_table(const SqlEvalReport& report);

}  // namespace gtr
