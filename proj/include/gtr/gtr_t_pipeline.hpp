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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gtr/embedder.hpp"
#include "gtr/error.hpp"
#include "gtr/gtr_pipeline.hpp"
#include "gtr/llm_gateway.hpp"
#include "gtr/sqlite_db.hpp"
#include "gtr/vecstore.hpp"

namespace gtr {

struct Column {
  std::string name;
  std::string type;  // declared type; may be empty
  friend bool operator==(const Column&, const Column&) = default;
};

struct TableProfile {
  std::string db_id;
  std::string name;
  std::vector<Column> columns;
  std::size_t row_count = 0;
  std::vector<std::vector<Value>> sample_rows;
  std::string csv;
};

inline constexpr std::size_t kDefaultSampleLimit = 5;

// One profile per user table in sqlite_master order; sqlite_* tables are
// skipped. Columns follow schema order, samples follow engine row order.
std::vector<TableProfile> profile_tables(const Database& db,
                                         std::size_t sample_limit = kDefaultSampleLimit);

// RFC 4180 field: quoted (with "" doubling) iff it holds a comma, quote,
// CR or LF.
std::string csv_field(std::string_view text);

// Header line of column names, then one line per row, each "\n"-terminated.
// Throws Errc::kInvalidInput when columns is empty.
std::string serialize_table_csv(std::span<const Column> columns,
                                std::span<const std::vector<Value>> rows);

// "table: {name}\ncolumns: {c1, c2, ...}\n{csv}"
std::string table_embedding_text(const TableProfile& profile);
// "<db_id>.<name>"
std::string table_record_id(const TableProfile& profile);

void index_tables_into(VectorStore& store, std::span<const TableProfile> profiles,
                       const Embedder& embedder);

// Same load-or-create contract as ingest(): re-indexing into an existing
// store file fails with Errc::kDuplicateId.
VectorStore index_tables(std::span<const TableProfile> profiles, const EmbedderConfig& config,
                         const std::filesystem::path& store_path);

// query_top_k over a store holding only table records.
std::vector<ScoredId> select_tables(const Query& query, const VectorStore& store, std::size_t k,
                                    const Embedder& embedder);

// Per table "Table {name}({col type, ...})\n{csv}\n\n", then
// "Question: {query}\nSQL:". Throws Errc::kEmptySelection.
std::string compose_sql_prompt(std::span<const TableProfile> selected, const Query& query);

struct SqlQuery {
  static constexpr std::string_view kDialect = "sqlite";
  std::string text;
};

// Trims, unwraps a ``` fenced block and keeps the text before the first ';'
// outside quotes. Throws Errc::kEmptyGeneration when nothing remains.
SqlQuery extract_sql(std::string_view completion);
SqlQuery generate_sql(std::string_view prompt, const LlmConfig& config);

// Accepts statements whose first keyword is SELECT or WITH; anything else
// raises Errc::kNonReadStatement.
void require_read_statement(std::string_view sql);

ResultSet execute_sql(const SqlQuery& sql, const Database& db, const ExecLimits& limits = {});

enum class Stage { kSelectTables, kComposePrompt, kGenerateSql, kExecuteSql };
std::string_view to_string(Stage stage);

struct StageFailure {
  Stage stage;
  Errc code;
  std::string message;
};

struct TabularTrace {
  std::string query;
  std::vector<ScoredId> selected;
  std::string prompt;
  std::optional<Completion> completion;
  std::optional<std::string> sql;
  std::optional<ResultSet> result;
  std::optional<StageFailure> failure;
};

struct TabularAnswer {
  SqlQuery sql;
  ResultSet result;
  TabularTrace trace;
};

// Raised by answer_tabular; what() is "<Code>: <stage>: <message>" and the
// partial trace records every stage that completed.
class StageError : public Error {
 public:
  StageError(const StageFailure& failure, TabularTrace trace);
  Stage stage() const noexcept { return stage_; }
  const TabularTrace& trace() const noexcept { return trace_; }

 private:
  Stage stage_;
  TabularTrace trace_;
};

struct TabularOptions {
  std::size_t k = 3;
  std::size_t sample_limit = kDefaultSampleLimit;
  ExecLimits limits;
};

// select_tables -> compose_sql_prompt -> generate -> extract_sql -> execute_sql.
TabularAnswer answer_tabular(const Query& query, const Database& db, const VectorStore& store,
                             const Embedder& embedder, const LanguageModel& model,
                             const TabularOptions& options = {});
TabularAnswer answer_tabular(const Query& query, const Database& db, const VectorStore& store,
                             const EmbedderConfig& embedder_config, const LlmConfig& llm_config,
                             const TabularOptions& options = {});

nlohmann::ordered_json to_json(const ResultSet& result);
nlohmann::ordered_json to_json(const TabularTrace& trace);

}  // namespace gtr
