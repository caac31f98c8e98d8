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
#include <vector>

#include <json.hpp>

#include "gtr/chunker.hpp"
#include "gtr/embedder.hpp"
#include "gtr/llm_gateway.hpp"
#include "gtr/vecstore.hpp"

namespace gtr {

// A user question. Construction rejects blank text with Errc::kInvalidInput.
class Query {
 public:
  explicit Query(std::string text);
  const std::string& text() const noexcept { return text_; }

 private:
  std::string text_;
};

struct AnswerTrace {
  std::string query;
  std::vector<ScoredId> retrieved;
  std::string prompt;
  std::string answer;
  Completion completion;
  std::optional<int> truthful;  // set only by a human label
};

nlohmann::ordered_json to_json(const AnswerTrace& trace);

// Adds one chunk record per chunk, id "<doc_id>:<index>", to store.
// Validates every document before the store is touched.
void ingest_into(VectorStore& store, std::span<const Document> docs, const ChunkConfig& chunking,
                 const Embedder& embedder);

// Loads store_path when it exists (its fingerprint must match the embedder),
// otherwise starts a fresh store; ingests docs and saves back.
VectorStore ingest(std::span<const Document> docs, const ChunkConfig& chunking,
                   const EmbedderConfig& embedder_config, const std::filesystem::path& store_path);

// "Context:\n" + chunks joined by "\n\n" + "\n\nQuestion: " + query + "\nAnswer:"
std::string compose_prompt(const Query& query, std::span<const std::string> chunks);

AnswerTrace answer(const Query& query, const VectorStore& store, std::size_t k,
                   const Embedder& embedder, const LanguageModel& model);

AnswerTrace answer(const Query& query, const VectorStore& store, std::size_t k,
                   const EmbedderConfig& embedder_config, const LlmConfig& llm_config);

}  // namespace gtr
