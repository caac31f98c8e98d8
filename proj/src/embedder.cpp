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

#include "gtr/embedder.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "gtr/chunker.hpp"
#include "gtr/error.hpp"
#include "http_json.hpp"

namespace gtr {
namespace {

bool is_blank(std::string_view text) {
  return text.find_first_not_of(" \t\n\r\v\f") == std::string_view::npos;
}

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

class HashedBowEmbedder final : public Embedder {
 public:
  explicit HashedBowEmbedder(EmbedderConfig config) : config_(std::move(config)) {}

  EmbeddingVector embed(std::string_view text) const override {
    if (is_blank(text)) throw Error(Errc::kEmptyText, "cannot embed whitespace-only text");
    std::vector<double> counts(config_.dim, 0.0);
    for (const Token& tok : tokenize(text)) {
      counts[hashed_bucket(lowercase_ascii(tok.text), config_.dim, config_.seed)] += 1.0;
    }
    return EmbeddingVector::normalized(std::move(counts));
  }

  std::string fingerprint() const override { return config_.fingerprint(); }

 private:
  EmbedderConfig config_;
};

class HttpEmbedder final : public Embedder {
 public:
  explicit HttpEmbedder(EmbedderConfig config) : config_(std::move(config)) {}

  EmbeddingVector embed(std::string_view text) const override {
    const std::string owned(text);
    return embed_batch(std::span<const std::string>(&owned, 1)).front();
  }

  std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts) const override {
    for (std::size_t i = 0; i < texts.size(); ++i) {
      if (is_blank(texts[i])) {
        throw Error(Errc::kEmptyText, "batch element " + std::to_string(i) + " is whitespace-only");
      }
    }
    const detail::HttpPolicy policy{config_.timeout, config_.max_attempts, config_.initial_backoff};
    std::vector<EmbeddingVector> out;
    out.reserve(texts.size());
    for (std::size_t begin = 0; begin < texts.size(); begin += config_.batch_size) {
      const std::size_t end = std::min(begin + config_.batch_size, texts.size());
      nlohmann::json body;
      body["inputs"] = nlohmann::json::array();
      for (std::size_t i = begin; i < end; ++i) body["inputs"].push_back(texts[i]);

      const nlohmann::json reply = detail::post_json(*config_.endpoint_url, body, policy);
      if (!reply.is_object() || !reply.contains("embeddings") || !reply["embeddings"].is_array() ||
          reply["embeddings"].size() != end - begin) {
        throw Error(Errc::kBackendUnavailable,
                    "embedding reply must carry " + std::to_string(end - begin) + " embeddings");
      }
      for (std::size_t j = 0; j < end - begin; ++j) {
        const auto& row = reply["embeddings"][j];
        std::vector<double> values;
        try {
          values = row.get<std::vector<double>>();
        } catch (const nlohmann::json::exception&) {
          throw Error(Errc::kBackendUnavailable, "embedding " + std::to_string(begin + j) +
                                                     " is not a numeric array");
        }
        if (values.size() != config_.dim) {
          throw Error(Errc::kDimensionMismatch,
                      "embedding " + std::to_string(begin + j) + " has dim " +
                          std::to_string(values.size()) + ", expected " + std::to_string(config_.dim));
        }
        out.push_back(EmbeddingVector::normalized(std::move(values)));
      }
    }
    return out;
  }

  std::string fingerprint() const override { return config_.fingerprint(); }

 private:
  EmbedderConfig config_;
};

}  // namespace

EmbeddingVector::EmbeddingVector(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw Error(Errc::kInvalidInput, "embedding vector must be non-empty");
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(Errc::kInvalidInput, "embedding vector has non-finite entry");
  }
}

EmbeddingVector EmbeddingVector::normalized(std::vector<double> values) {
  EmbeddingVector v(std::move(values));
  const double n = v.norm();
  if (n == 0.0) throw Error(Errc::kZeroVector, "cannot normalize a zero vector");
  for (double& x : v.values_) x /= n;
  return v;
}

double EmbeddingVector::norm() const {
  double sum = 0.0;
  for (double x : values_) sum += x * x;
  return std::sqrt(sum);
}

std::string_view to_string(EmbedderBackend backend) {
  return backend == EmbedderBackend::kHashedBow ? "hashed_bow" : "http";
}

EmbedderBackend parse_embedder_backend(std::string_view name) {
  if (name == "hashed_bow") return EmbedderBackend::kHashedBow;
  if (name == "http") return EmbedderBackend::kHttp;
  throw Error(Errc::kInvalidConfig, "unknown embedder backend '" + std::string(name) + "'");
}

void EmbedderConfig::validate() const {
  if (dim == 0) throw Error(Errc::kInvalidConfig, "embedding dim must be positive");
  if (batch_size == 0) throw Error(Errc::kInvalidConfig, "batch_size must be positive");
  const bool needs_url = backend == EmbedderBackend::kHttp;
  const bool has_url = endpoint_url.has_value() && !endpoint_url->empty();
  if (needs_url != has_url) {
    throw Error(Errc::kInvalidConfig, needs_url ? "http embedder requires an endpoint url"
                                                : "endpoint url is only valid for the http embedder");
  }
}

std::string EmbedderConfig::fingerprint() const {
  std::string fp = std::string(to_string(backend)) + "/dim=" + std::to_string(dim);
  if (backend == EmbedderBackend::kHashedBow) {
    fp += "/seed=" + hex64(seed);
  } else {
    fp += "/url=" + endpoint_url.value_or("");
  }
  return fp;
}

std::uint64_t fnv1a(std::string_view token, std::uint64_t seed) {
  std::uint64_t h = seed;
  for (unsigned char c : token) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::size_t hashed_bucket(std::string_view token, std::size_t dim, std::uint64_t seed) {
  return static_cast<std::size_t>(fnv1a(token, seed) % dim);
}

std::vector<EmbeddingVector> Embedder::embed_batch(std::span<const std::string> texts) const {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    try {
      out.push_back(embed(texts[i]));
    } catch (const Error& e) {
      throw Error(e.code(), "batch element " + std::to_string(i) + ": " + e.detail());
    }
  }
  return out;
}

std::unique_ptr<Embedder> make_embedder(const EmbedderConfig& config) {
  config.validate();
  if (config.backend == EmbedderBackend::kHttp) return std::make_unique<HttpEmbedder>(config);
  return std::make_unique<HashedBowEmbedder>(config);
}

EmbeddingVector embed(std::string_view text, const EmbedderConfig& config) {
  return make_embedder(config)->embed(text);
}

std::vector<EmbeddingVector> embed_batch(std::span<const std::string> texts,
                                         const EmbedderConfig& config) {
  return make_embedder(config)->embed_batch(texts);
}

}  // namespace gtr
