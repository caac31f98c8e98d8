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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gtr {

// Fixed-dimension vector of finite doubles. Construction rejects empty or
// non-finite input; normalization is explicit.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values);

  // L2-normalized copy of values. Throws Errc::kZeroVector on a zero vector.
  static EmbeddingVector normalized(std::vector<double> values);

  std::size_t dim() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double norm() const;

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

enum class EmbedderBackend { kHashedBow, kHttp };

// FNV-1a 64-bit offset basis; the hashed_bow seed unless overridden.
inline constexpr std::uint64_t kDefaultHashSeed = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

struct EmbedderConfig {
  EmbedderBackend backend = EmbedderBackend::kHashedBow;
  std::size_t dim = 384;
  std::optional<std::string> endpoint_url;
  std::size_t batch_size = 32;
  std::uint64_t seed = kDefaultHashSeed;
  std::chrono::milliseconds timeout{30000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};

  void validate() const;
  // Identifies (backend, dim, seed or endpoint); stored in vector store headers.
  std::string fingerprint() const;
};

std::string_view to_string(EmbedderBackend backend);
EmbedderBackend parse_embedder_backend(std::string_view name);

// FNV-1a over the bytes of token, starting from seed.
std::uint64_t fnv1a(std::string_view token, std::uint64_t seed = kDefaultHashSeed);

// Bucket of a (lowercased) token in the hashed bag-of-words embedding.
std::size_t hashed_bucket(std::string_view token, std::size_t dim,
                          std::uint64_t seed = kDefaultHashSeed);

class Embedder {
 public:
  virtual ~Embedder() = default;
  virtual EmbeddingVector embed(std::string_view text) const = 0;
  virtual std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const;
  virtual std::string fingerprint() const = 0;
};

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config);

// Throws Errc::kEmptyText for whitespace-only text and
// Errc::kBackendUnavailable when the http backend fails after its retries.
EmbeddingVector embed(std::string_view text, const EmbedderConfig& config);

// Element i equals embed(texts[i]). An invalid element fails the whole batch
// and the error message names its index.
std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const EmbedderConfig& config);

}  // namespace gtr
