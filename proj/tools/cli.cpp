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

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "gtr/chunker.hpp"
#include "gtr/embedder.hpp"
#include "gtr/error.hpp"
#include "gtr/gtr_pipeline.hpp"
#include "gtr/gtr_t_pipeline.hpp"
#include "gtr/llm_gateway.hpp"
#include "gtr/sql_eval.hpp"
#include "gtr/text_metrics.hpp"
#include "gtr/vecstore.hpp"

namespace gtr::cli {
namespace {

namespace fs = std::filesystem;

constexpr std::string_view kDefaultStore = "store.jsonl";

struct EmbedOptions {
  std::string backend = "hashed_bow";
  std::size_t dim = 384;
  std::optional<std::string> url;
  std::size_t batch_size = 32;
};

struct LlmOptions {
  std::string spec;
  std::optional<std::string> url;
  std::size_t max_tokens = 256;
  double temperature = 0.0;
};

void add_embed_options(CLI::App* cmd, EmbedOptions& o) {
  cmd->add_option("--embedder", o.backend, "hashed_bow or http")->capture_default_str();
  cmd->add_option("--dim", o.dim, "Embedding dimension")->capture_default_str();
  cmd->add_option("--embed-url", o.url, "Embedding endpoint (env GTR_EMBED_URL)");
  cmd->add_option("--batch-size", o.batch_size, "Texts per embedding request")->capture_default_str();
}

void add_llm_options(CLI::App* cmd, LlmOptions& o, std::string default_spec) {
  o.spec = std::move(default_spec);
  cmd->add_option("--llm", o.spec, "echo | fixed:<text> | template:<file.json> | http")->capture_default_str();
  cmd->add_option("--llm-url", o.url, "Completion endpoint for --llm http (env GTR_LLM_URL)");
  cmd->add_option("--max-tokens", o.max_tokens, "Completion token budget")->capture_default_str();
  cmd->add_option("--temperature", o.temperature, "Sampling temperature")->capture_default_str();
}

EmbedderConfig embedder_config(const EmbedOptions& o, const EnvLookup& env) {
  EmbedderConfig cfg;
  cfg.backend = parse_embedder_backend(o.backend);
  cfg.dim = o.dim;
  cfg.batch_size = o.batch_size;
  cfg.endpoint_url = o.url ? o.url : env("GTR_EMBED_URL");
  if (cfg.backend != EmbedderBackend::kHttp) cfg.endpoint_url.reset();
  cfg.validate();
  return cfg;
}

LlmConfig llm_config(const LlmOptions& o, const EnvLookup& env) {
  LlmConfig cfg;
  cfg.max_new_tokens = o.max_tokens;
  cfg.temperature = o.temperature;
  const std::string_view spec = o.spec;
  if (spec == "echo") {
    cfg.backend = LlmBackend::kEchoContext;
  } else if (spec.starts_with("fixed:")) {
    cfg.backend = LlmBackend::kFixed;
    cfg.fixed_text = std::string(spec.substr(6));
  } else if (spec.starts_with("template:")) {
    cfg.backend = LlmBackend::kTemplateSql;
    cfg.sql_templates = load_sql_templates(fs::path(std::string(spec.substr(9))));
  } else if (spec == "http") {
    cfg.backend = LlmBackend::kHttp;
    cfg.endpoint_url = o.url ? o.url : env("GTR_LLM_URL");
  } else {
    throw Error(Errc::kInvalidConfig, "unknown --llm value '" + o.spec + "'");
  }
  cfg.validate();
  return cfg;
}

fs::path store_path(const std::optional<std::string>& flag, const EnvLookup& env) {
  if (flag) return *flag;
  if (auto v = env("GTR_STORE"); v && !v->empty()) return *v;
  return std::string(kDefaultStore);
}

void write_file(const fs::path& path, const std::string& content, bool append) {
  std::ofstream f(path, std::ios::binary | (append ? std::ios::app : std::ios::trunc));
  if (!f) throw Error(Errc::kIo, "cannot write " + path.string());
  f << content;
  if (!f.flush()) throw Error(Errc::kIo, "write failed: " + path.string());
}

std::string number_text(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string result_csv(const ResultSet& result) {
  std::vector<Column> columns;
  for (const auto& name : result.columns) columns.push_back(Column{name, ""});
  if (columns.empty()) return "";
  return serialize_table_csv(columns, result.rows);
}

}  // namespace

std::optional<std::string> process_env(std::string_view name) {
  if (const char* v = std::getenv(std::string(name).c_str())) return std::string(v);
  return std::nullopt;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"Retrieval-augmented question answering over text and tables, with evaluation tools.", "gtr"};
  app.footer(
      "Configuration precedence: command-line flags, then environment variables\n"
      "(GTR_LLM_URL, GTR_EMBED_URL, GTR_STORE), then built-in defaults.");
  app.require_subcommand(1);

  std::optional<std::string> store;
  EmbedOptions embed;
  LlmOptions ask_llm, tables_llm;

  // ingest
  std::vector<std::string> inputs;
  ChunkConfig chunking;
  auto* ingest_cmd = app.add_subcommand("ingest", "Chunk, embed and store documents (.txt or .jsonl)");
  ingest_cmd->add_option("--input", inputs, "Input document file; repeatable")->required();
  ingest_cmd->add_option("--store", store, "Store file (env GTR_STORE)");
  ingest_cmd->add_option("--chunk-size", chunking.chunk_size, "Tokens per chunk")->capture_default_str();
  ingest_cmd->add_option("--overlap", chunking.overlap, "Tokens shared by adjacent chunks")->capture_default_str();
  add_embed_options(ingest_cmd, embed);

  // ask
  std::string question;
  std::size_t k = 3;
  std::optional<std::string> trace_path;
  auto* ask_cmd = app.add_subcommand("ask", "Answer a question from stored chunks");
  ask_cmd->add_option("question", question, "Question text")->required();
  ask_cmd->add_option("--store", store, "Store file (env GTR_STORE)");
  ask_cmd->add_option("--k", k, "Chunks to retrieve")->capture_default_str();
  ask_cmd->add_option("--trace", trace_path, "Append the answer trace to this JSONL file");
  add_embed_options(ask_cmd, embed);
  add_llm_options(ask_cmd, ask_llm, "echo");

  // tables
  std::string db_path;
  std::size_t sample_limit = kDefaultSampleLimit;
  auto* tables_cmd = app.add_subcommand("tables", "Table retrieval and SQL answering");
  tables_cmd->require_subcommand(1);
  auto* tables_ingest = tables_cmd->add_subcommand("ingest", "Index every table of a database");
  tables_ingest->add_option("--db", db_path, "SQLite database file")->required();
  tables_ingest->add_option("--store", store, "Store file (env GTR_STORE)");
  tables_ingest->add_option("--sample-limit", sample_limit, "Sample rows per table")->capture_default_str();
  add_embed_options(tables_ingest, embed);
  auto* tables_ask = tables_cmd->add_subcommand("ask", "Answer a question with generated SQL");
  tables_ask->add_option("question", question, "Question text")->required();
  tables_ask->add_option("--db", db_path, "SQLite database file")->required();
  tables_ask->add_option("--store", store, "Store file (env GTR_STORE)");
  tables_ask->add_option("--k", k, "Tables to select")->capture_default_str();
  tables_ask->add_option("--sample-limit", sample_limit, "Sample rows per table in the prompt")->capture_default_str();
  tables_ask->add_option("--trace", trace_path, "Append the tabular trace to this JSONL file");
  add_embed_options(tables_ask, embed);
  add_llm_options(tables_ask, tables_llm, "http");

  // eval
  std::optional<std::string> report_path;
  std::string items_path, gold_path, pred_path, db_dir;
  std::size_t jobs = 0;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluation suites");
  eval_cmd->require_subcommand(1);
  auto* eval_text = eval_cmd->add_subcommand("text", "ROUGE, SAS and truthfulness over answer items");
  eval_text->add_option("--items", items_path, "Items JSONL")->required();
  eval_text->add_option("--report", report_path, "Write the JSONL report here");
  add_embed_options(eval_text, embed);
  auto* eval_sql = eval_cmd->add_subcommand("sql", "Exact-Set-Match and Execution Accuracy");
  eval_sql->add_option("--gold", gold_path, "Gold file: SQL<TAB>db_id per line")->required();
  eval_sql->add_option("--pred", pred_path, "Prediction file: SQL per line")->required();
  eval_sql->add_option("--db-dir", db_dir, "Directory holding <db_id>/<db_id>.sqlite")->required();
  eval_sql->add_option("--jobs", jobs, "Worker threads (0 = logical cores)")->capture_default_str();
  eval_sql->add_option("--report", report_path, "Write the JSONL report here");

  // export
  std::optional<std::string> output_path;
  auto* export_cmd = app.add_subcommand("export", "Write stored embeddings as CSV");
  export_cmd->add_option("--store", store, "Store file (env GTR_STORE)");
  export_cmd->add_option("--output", output_path, "CSV file (default: standard output)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*ingest_cmd) {
      chunking.validate();
      const EmbedderConfig ecfg = embedder_config(embed, env);
      std::vector<Document> docs;
      for (const auto& input : inputs) {
        auto batch = read_documents(input);
        docs.insert(docs.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
      }
      const fs::path path = store_path(store, env);
      const std::size_t before = fs::exists(path) ? VectorStore::load(path).size() : 0;
      const VectorStore result = ingest(docs, chunking, ecfg, path);
      out << "documents: " << docs.size() << "\nchunks: " << result.size() - before << "\ndim: " << result.dim()
          << "\nstore: " << path.string() << "\n";
    } else if (*ask_cmd) {
      const Query query(question);
      const EmbedderConfig ecfg = embedder_config(embed, env);
      const LlmConfig lcfg = llm_config(ask_llm, env);
      const VectorStore vs = VectorStore::load(store_path(store, env));
      const AnswerTrace trace = answer(query, vs, k, ecfg, lcfg);
      if (trace_path) write_file(*trace_path, to_json(trace).dump() + "\n", true);
      out << trace.answer << "\n";
    } else if (*tables_ingest) {
      const EmbedderConfig ecfg = embedder_config(embed, env);
      const Database db = Database::open_readonly(db_path);
      const auto profiles = profile_tables(db, sample_limit);
      const fs::path path = store_path(store, env);
      index_tables(profiles, ecfg, path);
      for (const auto& p : profiles) out << "indexed " << table_record_id(p) << " (" << p.row_count << " rows)\n";
      out << "store: " << path.string() << "\n";
    } else if (*tables_ask) {
      const Query query(question);
      const EmbedderConfig ecfg = embedder_config(embed, env);
      const LlmConfig lcfg = llm_config(tables_llm, env);
      const Database db = Database::open_readonly(db_path);
      const VectorStore vs = VectorStore::load(store_path(store, env));
      TabularOptions options;
      options.k = k;
      options.sample_limit = sample_limit;
      try {
        const TabularAnswer result = answer_tabular(query, db, vs, ecfg, lcfg, options);
        if (trace_path) write_file(*trace_path, to_json(result.trace).dump() + "\n", true);
        out << result.sql.text << "\n" << result_csv(result.result);
      } catch (const StageError& e) {
        if (trace_path) write_file(*trace_path, to_json(e.trace()).dump() + "\n", true);
        throw;
      }
    } else if (*eval_text) {
      const EmbedderConfig ecfg = embedder_config(embed, env);
      const auto items = read_eval_items(items_path);
      const TextEvalReport report = aggregate(items, ecfg);
      if (report_path) write_file(*report_path, report_jsonl(items, report), false);
      out << summary_table(report);
    } else if (*eval_sql) {
      const auto pairs = read_suite_files(gold_path, pred_path);
      const SqlEvalReport report = evaluate_suite(pairs, db_dir, jobs);
      if (report_path) write_file(*report_path, report_jsonl(report), false);
      out << summary_table(report);
    } else if (*export_cmd) {
      const VectorStore vs = VectorStore::load(store_path(store, env));
      std::string csv = "id,kind";
      for (std::size_t d = 0; d < vs.dim(); ++d) csv += ",d" + std::to_string(d);
      csv += "\n";
      for (std::size_t i = 0; i < vs.size(); ++i) {
        const RecordView r = vs.record(i);
        csv += csv_field(r.id) + "," + std::string(to_string(r.payload->kind));
        for (double v : r.vector) csv += "," + number_text(v);
        csv += "\n";
      }
      if (output_path) {
        write_file(*output_path, csv, false);
      } else {
        out << csv;
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gtr::cli
