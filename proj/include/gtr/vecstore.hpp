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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gtr/embedder.hpp"

namespace gtr {

enum class RecordKind { kChunk, kTable };

std::string_view to_string(RecordKind kind);

struct Payload {
  RecordKind kind = RecordKind::kChunk;
  std::string text;
  std::map<std::string, std::string> metadata;

  friend bool operator==(const Payload&, const Payload&) = default;
};

struct VectorRecord {
  std::string id;
  EmbeddingVector vector;
  Payload payload;

  friend bool operator==(const VectorRecord&, const VectorRecord&) = default;
};

// Borrowed view of a stored record; valid until the next insert.
struct RecordView {
  std::string_view id;
  std::span<const double> vector;
  const Payload* payload = nullptr;
};

struct ScoredId {
  std::string id;
  double score = 0.0;

  friend bool operator==(const ScoredId&, const ScoredId&) = default;
};

// u.v / (|u| |v|), clamped to [-1, 1].
// Throws Errc::kDimensionMismatch or Errc::kZeroVector.
double cosine(std::span<const double> u, std::span<const double> v);
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

// Exact-search embedding store. Vectors live in one row-major matrix with
// their squared norms cached, so a query is a single pass over memory.
//
// Readers (query_top_k, find, record, save) may run concurrently; insert
// requires exclusive access.
class VectorStore {
 public:
  VectorStore(std::size_t dim, std::string embedder_fingerprint);

  std::size_t dim() const noexcept { return dim_; }
  const std::string& embedder_fingerprint() const noexcept { return fingerprint_; }
  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  // Throws Errc::kDuplicateId, Errc::kDimensionMismatch or Errc::kZeroVector.
  void insert(VectorRecord record);

  RecordView record(std::size_t i) const;
  std::optional<RecordView> find(std::string_view id) const;
  VectorRecord materialize(std::size_t i) const;

  // The min(k, size()) best records by cosine, score descending, ties broken
  // by ascending id. k must be positive.
  std::vector<ScoredId> query_top_k(const EmbeddingVector& query, std::size_t k) const;

  // JSONL: a header line then one record per line. See docs/store-format.md.
  void save(const std::filesystem::path& path) const;
  static VectorStore load(const std::filesystem::path& path);

  // Serialized form of save(), exposed for byte-level comparisons.
  std::string serialize() const;
  static VectorStore deserialize(std::string_view content, const std::string& source = "<memory>");

  friend bool operator==(const VectorStore& a, const VectorStore& b);

 private:
  struct Entry {
    std::string id;
    Payload payload;
  };

  std::size_t dim_;
  std::string fingerprint_;
  std::vector<Entry> entries_;
  std::vector<double> matrix_;
  std::vector<double> sq_norms_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace gtr
