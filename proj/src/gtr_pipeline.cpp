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

#include "gtr/gtr_pipeline.hpp"

#include <unordered_set>

#include "gtr/error.hpp"

namespace gtr {
namespace {

bool is_blank(std::string_view s) {
  return s.find_first_not_of(" \t\n\r\v\f") == std::string_view::npos;
}

void require_fingerprint(const VectorStore& store, const Embedder& embedder) {
  const std::string fp = embedder.fingerprint();
  if (store.embedder_fingerprint() != fp) {
    throw Error(Errc::kFingerprintMismatch, "store was built by '" + store.embedder_fingerprint() +
                                                "' but the embedder is '" + fp + "'");
  }
}

}  // namespace

Query::Query(std::string text) : text_(std::move(text)) {
  if (is_blank(text_)) throw Error(Errc::kInvalidInput, "query must be non-empty");
}

nlohmann::ordered_json to_json(const AnswerTrace& trace) {
  nlohmann::ordered_json j;
  j["query"] = trace.query;
  j["retrieved"] = nlohmann::ordered_json::array();
  for (const auto& r : trace.retrieved) {
    j["retrieved"].push_back({{"id", r.id}, {"score", r.score}});
  }
  j["prompt"] = trace.prompt;
  j["answer"] = trace.answer;
  j["completion"] = {{"text", trace.completion.text},
                     {"prompt_tokens", trace.completion.prompt_tokens},
                     {"completion_tokens", trace.completion.completion_tokens},
                     {"latency_ms", trace.completion.latency_ms}};
  j["truthful"] = trace.truthful ? nlohmann::ordered_json(*trace.truthful) : nlohmann::ordered_json();
  return j;
}

void ingest_into(VectorStore& store, std::span<const Document> docs, const ChunkConfig& chunking,
                 const Embedder& embedder) {
  if (docs.empty()) throw Error(Errc::kInvalidInput, "no documents to ingest");
  chunking.validate();
  require_fingerprint(store, embedder);

  std::unordered_set<std::string_view> ids;
  for (const Document& doc : docs) {
    if (doc.id.empty()) throw Error(Errc::kInvalidInput, "document id must be non-empty");
    if (!ids.insert(doc.id).second) {
      throw Error(Errc::kDuplicateId, "document id '" + doc.id + "' appears twice");
    }
    if (!is_valid_utf8(doc.text)) {
      throw Error(Errc::kInvalidInput, "document '" + doc.id + "' is not valid UTF-8");
    }
  }

  std::vector<VectorRecord> pending;
  for (const Document& doc : docs) {
    const std::vector<Chunk> chunks = chunk_text(doc, chunking);
    std::vector<std::string> texts;
    texts.reserve(chunks.size());
    for (const Chunk& c : chunks) texts.push_back(c.text);
    std::vector<EmbeddingVector> vectors = embedder.embed_batch(texts);
    for (std::size_t i = 0; i < chunks.size(); ++i) {
      const Chunk& c = chunks[i];
      std::string id = c.doc_id + ":" + std::to_string(c.index);
      if (store.find(id)) throw Error(Errc::kDuplicateId, "record id '" + id + "' already present");
      Payload payload{RecordKind::kChunk, c.text,
                      {{"doc_id", c.doc_id},
                       {"token_start", std::to_string(c.token_start)},
                       {"token_end", std::to_string(c.token_end)}}};
      pending.push_back(VectorRecord{std::move(id), std::move(vectors[i]), std::move(payload)});
    }
  }
  for (auto& rec : pending) store.insert(std::move(rec));
}

VectorStore ingest(std::span<const Document> docs, const ChunkConfig& chunking,
                   const EmbedderConfig& embedder_config, const std::filesystem::path& store_path) {
  const auto embedder = make_embedder(embedder_config);
  VectorStore store = std::filesystem::exists(store_path)
                          ? VectorStore::load(store_path)
                          : VectorStore(embedder_config.dim, embedder->fingerprint());
  ingest_into(store, docs, chunking, *embedder);
  store.save(store_path);
  return store;
}

std::string compose_prompt(const Query& query, std::span<const std::string> chunks) {
  if (chunks.empty()) throw Error(Errc::kEmptyContext, "prompt needs at least one context chunk");
  std::string prompt = "Context:\n";
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    if (i) prompt += "\n\n";
    prompt += chunks[i];
  }
  prompt += "\n\nQuestion: ";
  prompt += query.text();
  prompt += "\nAnswer:";
  return prompt;
}

AnswerTrace answer(const Query& query, const VectorStore& store, std::size_t k,
                   const Embedder& embedder, const LanguageModel& model) {
  require_fingerprint(store, embedder);
  if (store.empty()) throw Error(Errc::kInvalidInput, "store is empty");

  AnswerTrace trace;
  trace.query = query.text();
  trace.retrieved = store.query_top_k(embedder.embed(query.text()), k);

  std::vector<std::string> texts;
  texts.reserve(trace.retrieved.size());
  for (const auto& hit : trace.retrieved) texts.push_back(store.find(hit.id)->payload->text);

  trace.prompt = compose_prompt(query, texts);
  trace.completion = model.complete(trace.prompt);
  trace.answer = trace.completion.text;
  return trace;
}

AnswerTrace answer(const Query& query, const VectorStore& store, std::size_t k,
                   const EmbedderConfig& embedder_config, const LlmConfig& llm_config) {
  return answer(query, store, k, *make_embedder(embedder_config), *make_language_model(llm_config));
}

}  // namespace gtr
