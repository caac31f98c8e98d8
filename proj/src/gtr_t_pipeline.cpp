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

#include "gtr/gtr_t_pipeline.hpp"

#include <cctype>

#include <map>

namespace gtr {
namespace {

constexpr std::size_t kCatalogRowLimit = 1'000'000;

const ExecLimits& catalog_limits() {
  static const ExecLimits limits{std::chrono::milliseconds(60000), kCatalogRowLimit};
  return limits;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\n\r\v\f");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\n\r\v\f");
  return s.substr(b, e - b + 1);
}

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

nlohmann::ordered_json value_json(const Value& v) {
  if (std::holds_alternative<std::monostate>(v)) return nullptr;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return value_to_text(v);
}

void require_table_store(const VectorStore& store, const Embedder& embedder) {
  if (store.embedder_fingerprint() != embedder.fingerprint()) {
    throw Error(Errc::kFingerprintMismatch, "store was built by '" + store.embedder_fingerprint() +
                                                "' but the embedder is '" + embedder.fingerprint() + "'");
  }
  for (std::size_t i = 0; i < store.size(); ++i) {
    const RecordView r = store.record(i);
    if (r.payload->kind != RecordKind::kTable) {
      throw Error(Errc::kInvalidInput, "record '" + std::string(r.id) + "' is not a table record");
    }
  }
}

}  // namespace

std::vector<TableProfile> profile_tables(const Database& db, std::size_t sample_limit) {
  const ResultSet tables = db.query(
      "SELECT name FROM sqlite_master WHERE type = 'table' AND name NOT LIKE 'sqlite\\_%' ESCAPE '\\' "
      "ORDER BY rowid",
      catalog_limits());

  std::vector<TableProfile> profiles;
  for (const auto& row : tables.rows) {
    TableProfile p;
    p.db_id = db.db_id();
    p.name = std::get<std::string>(row.at(0));
    const std::string quoted = quote_identifier(p.name);

    const ResultSet info = db.query("PRAGMA table_info(" + quoted + ")", catalog_limits());
    for (const auto& col : info.rows) {
      p.columns.push_back(Column{value_to_text(col.at(1)), value_to_text(col.at(2))});
    }
    const ResultSet count = db.query("SELECT COUNT(*) FROM " + quoted, catalog_limits());
    p.row_count = static_cast<std::size_t>(std::get<std::int64_t>(count.rows.at(0).at(0)));
    if (sample_limit > 0) {
      p.sample_rows = db.query("SELECT * FROM " + quoted + " LIMIT " + std::to_string(sample_limit),
                               catalog_limits())
                          .rows;
    }
    if (!p.columns.empty()) p.csv = serialize_table_csv(p.columns, p.sample_rows);
    profiles.push_back(std::move(p));
  }
  return profiles;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string serialize_table_csv(std::span<const Column> columns,
                                std::span<const std::vector<Value>> rows) {
  if (columns.empty()) throw Error(Errc::kInvalidInput, "a CSV table needs at least one column");
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += csv_field(columns[i].name);
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) {
      throw Error(Errc::kInvalidInput, "CSV row has " + std::to_string(row.size()) + " values for " +
                                           std::to_string(columns.size()) + " columns");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_field(value_to_text(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string table_embedding_text(const TableProfile& profile) {
  std::string text = "table: " + profile.name + "\ncolumns: ";
  for (std::size_t i = 0; i < profile.columns.size(); ++i) {
    if (i) text += ", ";
    text += profile.columns[i].name;
  }
  text += '\n';
  text += profile.csv;
  return text;
}

std::string table_record_id(const TableProfile& profile) { return profile.db_id + "." + profile.name; }

void index_tables_into(VectorStore& store, std::span<const TableProfile> profiles,
                       const Embedder& embedder) {
  if (profiles.empty()) throw Error(Errc::kInvalidInput, "no tables to index");
  if (store.embedder_fingerprint() != embedder.fingerprint()) {
    throw Error(Errc::kFingerprintMismatch, "store was built by '" + store.embedder_fingerprint() +
                                                "' but the embedder is '" + embedder.fingerprint() + "'");
  }
  std::vector<std::string> texts;
  for (const auto& p : profiles) {
    const std::string id = table_record_id(p);
    if (store.find(id)) throw Error(Errc::kDuplicateId, "record id '" + id + "' already present");
    texts.push_back(table_embedding_text(p));
  }
  std::vector<EmbeddingVector> vectors = embedder.embed_batch(texts);
  std::vector<VectorRecord> pending;
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    pending.push_back(VectorRecord{
        table_record_id(profiles[i]), std::move(vectors[i]),
        Payload{RecordKind::kTable, std::move(texts[i]),
                {{"db_id", profiles[i].db_id}, {"name", profiles[i].name}}}});
  }
  // Duplicates inside one batch surface here, before anything is inserted.
  std::map<std::string, int> seen;
  for (const auto& rec : pending) {
    if (++seen[rec.id] > 1) throw Error(Errc::kDuplicateId, "table '" + rec.id + "' listed twice");
  }
  for (auto& rec : pending) store.insert(std::move(rec));
}

VectorStore index_tables(std::span<const TableProfile> profiles, const EmbedderConfig& config,
                         const std::filesystem::path& store_path) {
  const auto embedder = make_embedder(config);
  VectorStore store = std::filesystem::exists(store_path) ? VectorStore::load(store_path)
                                                          : VectorStore(config.dim, embedder->fingerprint());
  index_tables_into(store, profiles, *embedder);
  store.save(store_path);
  return store;
}

std::vector<ScoredId> select_tables(const Query& query, const VectorStore& store, std::size_t k,
                                    const Embedder& embedder) {
  require_table_store(store, embedder);
  return store.query_top_k(embedder.embed(query.text()), k);
}

std::string compose_sql_prompt(std::span<const TableProfile> selected, const Query& query) {
  if (selected.empty()) throw Error(Errc::kEmptySelection, "no tables selected for the SQL prompt");
  std::string prompt;
  for (const auto& t : selected) {
    prompt += "Table " + t.name + "(";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (i) prompt += ", ";
      prompt += t.columns[i].name;
      if (!t.columns[i].type.empty()) prompt += " " + t.columns[i].type;
    }
    prompt += ")\n";
    prompt += t.csv;
    prompt += "\n\n";
  }
  prompt += "Question: " + query.text() + "\nSQL:";
  return prompt;
}

SqlQuery extract_sql(std::string_view completion) {
  std::string_view text = trim(completion);
  if (const auto fence = text.find("```"); fence != std::string_view::npos) {
    std::string_view body = text.substr(fence + 3);
    // Drop a language tag such as ```sql on the opening line.
    const auto nl = body.find('\n');
    const auto tag = body.substr(0, nl);
    if (tag.find_first_of(" \t;") == std::string_view::npos && nl != std::string_view::npos) {
      body = body.substr(nl + 1);
    }
    text = body.substr(0, body.find("```"));
  }

  char quote = 0;
  std::size_t end = text.size();
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quote) {
      if (c == quote) quote = 0;
    } else if (c == '\'' || c == '"' || c == '`') {
      quote = c;
    } else if (c == ';') {
      end = i;
      break;
    }
  }
  const std::string_view sql = trim(text.substr(0, end));
  if (sql.empty()) throw Error(Errc::kEmptyGeneration, "completion contained no SQL");
  return SqlQuery{std::string(sql)};
}

SqlQuery generate_sql(std::string_view prompt, const LlmConfig& config) {
  return extract_sql(complete(prompt, config).text);
}

void require_read_statement(std::string_view sql) {
  std::size_t i = 0;
  while (i < sql.size()) {
    const char c = sql[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v' || c == '(') {
      ++i;
    } else if (sql.substr(i, 2) == "--") {
      const auto nl = sql.find('\n', i);
      i = nl == std::string_view::npos ? sql.size() : nl + 1;
    } else if (sql.substr(i, 2) == "/*") {
      const auto e = sql.find("*/", i + 2);
      i = e == std::string_view::npos ? sql.size() : e + 2;
    } else {
      break;
    }
  }
  std::size_t j = i;
  while (j < sql.size() && (std::isalnum(static_cast<unsigned char>(sql[j])) || sql[j] == '_')) ++j;
  const std::string keyword = upper_ascii(sql.substr(i, j - i));
  if (keyword != "SELECT" && keyword != "WITH") {
    throw Error(Errc::kNonReadStatement,
                "only SELECT statements may run (got '" + (keyword.empty() ? std::string("?") : keyword) + "')");
  }
}

ResultSet execute_sql(const SqlQuery& sql, const Database& db, const ExecLimits& limits) {
  db.compile(sql.text);
  require_read_statement(sql.text);
  return db.query(sql.text, limits);
}

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kSelectTables: return "select_tables";
    case Stage::kComposePrompt: return "compose_sql_prompt";
    case Stage::kGenerateSql: return "generate_sql";
    case Stage::kExecuteSql: return "execute_sql";
  }
  return "unknown";
}

StageError::StageError(const StageFailure& failure, TabularTrace trace)
    : Error(failure.code, std::string(to_string(failure.stage)) + ": " + failure.message),
      stage_(failure.stage),
      trace_(std::move(trace)) {}

TabularAnswer answer_tabular(const Query& query, const Database& db, const VectorStore& store,
                             const Embedder& embedder, const LanguageModel& model,
                             const TabularOptions& options) {
  TabularTrace trace;
  trace.query = query.text();
  const auto fail = [&](Stage stage, const Error& e) {
    trace.failure = StageFailure{stage, e.code(), e.detail()};
    return StageError(*trace.failure, trace);
  };

  std::vector<TableProfile> selected;
  try {
    trace.selected = select_tables(query, store, options.k, embedder);
    std::map<std::string, TableProfile> by_id;
    for (auto& p : profile_tables(db, options.sample_limit)) {
      std::string id = table_record_id(p);
      by_id.emplace(std::move(id), std::move(p));
    }
    for (const auto& hit : trace.selected) {
      const auto it = by_id.find(hit.id);
      if (it == by_id.end()) {
        throw Error(Errc::kInvalidInput, "table '" + hit.id + "' is not in database '" + db.db_id() + "'");
      }
      selected.push_back(it->second);
    }
  } catch (const Error& e) {
    throw fail(Stage::kSelectTables, e);
  }

  try {
    trace.prompt = compose_sql_prompt(selected, query);
  } catch (const Error& e) {
    throw fail(Stage::kComposePrompt, e);
  }

  SqlQuery sql;
  try {
    trace.completion = model.complete(trace.prompt);
    sql = extract_sql(trace.completion->text);
    trace.sql = sql.text;
  } catch (const Error& e) {
    throw fail(Stage::kGenerateSql, e);
  }

  ResultSet result;
  try {
    result = execute_sql(sql, db, options.limits);
    trace.result = result;
  } catch (const Error& e) {
    throw fail(Stage::kExecuteSql, e);
  }
  return TabularAnswer{std::move(sql), std::move(result), std::move(trace)};
}

TabularAnswer answer_tabular(const Query& query, const Database& db, const VectorStore& store,
                             const EmbedderConfig& embedder_config, const LlmConfig& llm_config,
                             const TabularOptions& options) {
  return answer_tabular(query, db, store, *make_embedder(embedder_config),
                        *make_language_model(llm_config), options);
}

nlohmann::ordered_json to_json(const ResultSet& result) {
  nlohmann::ordered_json j;
  j["columns"] = result.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : result.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& v : row) r.push_back(value_json(v));
    j["rows"].push_back(std::move(r));
  }
  j["truncated"] = result.truncated;
  return j;
}

nlohmann::ordered_json to_json(const TabularTrace& trace) {
  nlohmann::ordered_json j;
  j["query"] = trace.query;
  j["selected"] = nlohmann::ordered_json::array();
  for (const auto& s : trace.selected) j["selected"].push_back({{"id", s.id}, {"score", s.score}});
  j["prompt"] = trace.prompt;
  if (trace.completion) {
    j["completion"] = {{"text", trace.completion->text},
                       {"prompt_tokens", trace.completion->prompt_tokens},
                       {"completion_tokens", trace.completion->completion_tokens},
                       {"latency_ms", trace.completion->latency_ms}};
  } else {
    j["completion"] = nullptr;
  }
  j["sql"] = trace.sql ? nlohmann::ordered_json(*trace.sql) : nlohmann::ordered_json();
  j["result"] = trace.result ? to_json(*trace.result) : nlohmann::ordered_json();
  if (trace.failure) {
    j["failure"] = {{"stage", to_string(trace.failure->stage)},
                    {"code", to_string(trace.failure->code)},
                    {"message", trace.failure->message}};
  } else {
    j["failure"] = nullptr;
  }
  return j;
}

}  // namespace gtr
