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

#include "gtr/vecstore.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "gtr/chunker.hpp"
#include "gtr/error.hpp"

namespace gtr {
namespace {

constexpr std::string_view kFormatName = "gtr-store";
constexpr int kFormatVersion = 1;

// Four independent partial sums keep the loop off the add-latency chain.
// cosine() and the store share this kernel, so their scores agree bitwise.
double dot(const double* a, const double* b, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += a[i] * b[i];
    s1 += a[i + 1] * b[i + 1];
    s2 += a[i + 2] * b[i + 2];
    s3 += a[i + 3] * b[i + 3];
  }
  for (; i < n; ++i) s0 += a[i] * b[i];
  return (s0 + s1) + (s2 + s3);
}

// |u| |v| from the squared norms. sqrt(x * x) == x exactly in binary64, so
// cosine(u, u) is exactly 1; the split form covers overflow and underflow.
double norm_product(double uu, double vv) {
  const double p = uu * vv;
  if (std::isnormal(p)) return std::sqrt(p);
  return std::sqrt(uu) * std::sqrt(vv);
}

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

void append_double(std::string& out, double v) {
  if (v == 0.0 && std::signbit(v)) {
    out += "-0.0";
    return;
  }
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

RecordKind parse_kind(const std::string& s) {
  if (s == "chunk") return RecordKind::kChunk;
  if (s == "table") return RecordKind::kTable;
  throw std::invalid_argument("unknown record kind '" + s + "'");
}

[[noreturn]] void corrupt(const std::string& source, std::size_t line, const std::string& what) {
  throw Error(Errc::kCorruptStore, source + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string_view to_string(RecordKind kind) {
  return kind == RecordKind::kChunk ? "chunk" : "table";
}

double cosine(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw Error(Errc::kDimensionMismatch, "cosine of dim " + std::to_string(u.size()) +
                                              " and dim " + std::to_string(v.size()));
  }
  const double uu = dot(u.data(), u.data(), u.size());
  const double vv = dot(v.data(), v.data(), v.size());
  if (uu == 0.0 || vv == 0.0) throw Error(Errc::kZeroVector, "cosine of a zero vector");
  return clamp_unit(dot(u.data(), v.data(), u.size()) / norm_product(uu, vv));
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
  return cosine(u.values(), v.values());
}

VectorStore::VectorStore(std::size_t dim, std::string embedder_fingerprint)
    : dim_(dim), fingerprint_(std::move(embedder_fingerprint)) {
  if (dim_ == 0) throw Error(Errc::kInvalidConfig, "store dim must be positive");
}

void VectorStore::insert(VectorRecord record) {
  if (record.vector.dim() != dim_) {
    throw Error(Errc::kDimensionMismatch, "record '" + record.id + "' has dim " +
                                              std::to_string(record.vector.dim()) +
                                              ", store dim is " + std::to_string(dim_));
  }
  if (record.id.empty()) throw Error(Errc::kInvalidInput, "record id must be non-empty");
  if (index_.contains(record.id)) {
    throw Error(Errc::kDuplicateId, "record id '" + record.id + "' already present");
  }
  bool utf8_ok = is_valid_utf8(record.id) && is_valid_utf8(record.payload.text);
  for (const auto& [k, v] : record.payload.metadata) utf8_ok = utf8_ok && is_valid_utf8(k) && is_valid_utf8(v);
  if (!utf8_ok) throw Error(Errc::kInvalidInput, "record '" + record.id + "' is not valid UTF-8");

  const auto values = record.vector.values();
  const double n = dot(values.data(), values.data(), values.size());
  if (n == 0.0) throw Error(Errc::kZeroVector, "record '" + record.id + "' has a zero vector");

  matrix_.insert(matrix_.end(), values.begin(), values.end());
  sq_norms_.push_back(n);
  index_.emplace(record.id, entries_.size());
  entries_.push_back(Entry{std::move(record.id), std::move(record.payload)});
}

RecordView VectorStore::record(std::size_t i) const {
  const Entry& e = entries_.at(i);
  return RecordView{e.id, std::span<const double>(matrix_.data() + i * dim_, dim_), &e.payload};
}

std::optional<RecordView> VectorStore::find(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return record(it->second);
}

VectorRecord VectorStore::materialize(std::size_t i) const {
  const RecordView view = record(i);
  return VectorRecord{std::string(view.id),
                      EmbeddingVector(std::vector<double>(view.vector.begin(), view.vector.end())),
                      *view.payload};
}

std::vector<ScoredId> VectorStore::query_top_k(const EmbeddingVector& query, std::size_t k) const {
  if (k == 0) throw Error(Errc::kInvalidInput, "k must be positive");
  if (query.dim() != dim_) {
    throw Error(Errc::kDimensionMismatch, "query has dim " + std::to_string(query.dim()) +
                                              ", store dim is " + std::to_string(dim_));
  }
  const double qq = dot(query.values().data(), query.values().data(), dim_);
  if (qq == 0.0) throw Error(Errc::kZeroVector, "query is a zero vector");

  const std::size_t n = entries_.size();
  std::vector<double> scores(n);
  const double* q = query.values().data();
  for (std::size_t i = 0; i < n; ++i) {
    scores[i] = clamp_unit(dot(q, matrix_.data() + i * dim_, dim_) / norm_product(qq, sq_norms_[i]));
  }

  const auto better = [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return entries_[a].id < entries_[b].id;
  };

  std::vector<std::size_t> order;
  if (k == 1 && n > 0) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (better(i, best)) best = i;
    }
    order.push_back(best);
  } else {
    order.resize(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t m = std::min(k, n);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(m), order.end(), better);
    order.resize(m);
  }

  std::vector<ScoredId> out;
  out.reserve(order.size());
  for (std::size_t i : order) out.push_back(ScoredId{entries_[i].id, scores[i]});
  return out;
}

std::string VectorStore::serialize() const {
  nlohmann::ordered_json header;
  header["format"] = kFormatName;
  header["version"] = kFormatVersion;
  header["dim"] = dim_;
  header["embedder"] = fingerprint_;

  std::string out = header.dump();
  out += '\n';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const Entry& e = entries_[i];
    out += "{\"id\":";
    out += json_string(e.id);
    out += ",\"vector\":[";
    const double* row = matrix_.data() + i * dim_;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (j) out += ',';
      append_double(out, row[j]);
    }
    out += "],\"kind\":";
    out += json_string(to_string(e.payload.kind));
    out += ",\"text\":";
    out += json_string(e.payload.text);
    out += ",\"metadata\":{";
    bool first = true;
    for (const auto& [key, value] : e.payload.metadata) {
      if (!first) out += ',';
      first = false;
      out += json_string(key);
      out += ':';
      out += json_string(value);
    }
    out += "}}\n";
  }
  return out;
}

void VectorStore::save(const std::filesystem::path& path) const {
  const std::string content = serialize();
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIo, "cannot write store file '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(Errc::kIo, "short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(Errc::kIo, "cannot move store into '" + path.string() + "': " + ec.message());
}

VectorStore VectorStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open store file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str(), path.string());
}

VectorStore VectorStore::deserialize(std::string_view content, const std::string& source) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  std::optional<VectorStore> store;

  while (pos < content.size()) {
    const std::size_t nl = content.find('\n', pos);
    const std::string_view line =
        content.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? content.size() : nl + 1;
    ++line_no;

    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      corrupt(source, line_no, std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) corrupt(source, line_no, "expected a JSON object");

    if (!store) {
      if (j.value("format", "") != kFormatName) corrupt(source, line_no, "not a gtr-store header");
      if (!j.contains("version") || j["version"] != kFormatVersion) {
        corrupt(source, line_no, "unsupported store version");
      }
      if (!j.contains("dim") || !j["dim"].is_number_unsigned() || j["dim"].get<std::size_t>() == 0) {
        corrupt(source, line_no, "header dim must be a positive integer");
      }
      if (!j.contains("embedder") || !j["embedder"].is_string()) {
        corrupt(source, line_no, "header lacks embedder fingerprint");
      }
      store.emplace(j["dim"].get<std::size_t>(), j["embedder"].get<std::string>());
      continue;
    }

    try {
      VectorRecord rec;
      rec.id = j.at("id").get<std::string>();
      const auto& vec = j.at("vector");
      if (!vec.is_array() || vec.size() != store->dim()) {
        corrupt(source, line_no, "record '" + rec.id + "' vector does not match header dim " +
                                     std::to_string(store->dim()));
      }
      std::vector<double> values;
      values.reserve(vec.size());
      for (const auto& x : vec) {
        if (!x.is_number()) corrupt(source, line_no, "non-numeric vector entry");
        values.push_back(x.get<double>());
      }
      rec.vector = EmbeddingVector(std::move(values));
      rec.payload.kind = parse_kind(j.at("kind").get<std::string>());
      rec.payload.text = j.at("text").get<std::string>();
      rec.payload.metadata = j.at("metadata").get<std::map<std::string, std::string>>();
      store->insert(std::move(rec));
    } catch (const Error& e) {
      if (e.code() == Errc::kCorruptStore) throw;
      corrupt(source, line_no, e.detail());
    } catch (const std::exception& e) {
      corrupt(source, line_no, e.what());
    }
  }
  if (!store) corrupt(source, 1, "missing header line");
  return std::move(*store);
}

bool operator==(const VectorStore& a, const VectorStore& b) {
  if (a.dim_ != b.dim_ || a.fingerprint_ != b.fingerprint_ || a.entries_.size() != b.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].id != b.entries_[i].id || !(a.entries_[i].payload == b.entries_[i].payload)) {
      return false;
    }
  }
  return a.matrix_ == b.matrix_;
}

}  // namespace gtr
