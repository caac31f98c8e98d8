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

#include "gtr/chunker.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "gtr/error.hpp"

namespace gtr {
namespace {

enum class ByteClass { kSpace, kPunct, kWord };

ByteClass classify(unsigned char c) {
  switch (c) {
    case ' ': case '\t': case '\n': case '\r': case '\v': case '\f':
      return ByteClass::kSpace;
    default:
      break;
  }
  if (c < 0x80 && ((c >= 0x21 && c <= 0x2f) || (c >= 0x3a && c <= 0x40) ||
                   (c >= 0x5b && c <= 0x60) || (c >= 0x7b && c <= 0x7e))) {
    return ByteClass::kPunct;
  }
  return ByteClass::kWord;
}

template <typename Sink>
void scan_tokens(std::string_view text, Sink&& sink) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const ByteClass cls = classify(static_cast<unsigned char>(text[i]));
    if (cls == ByteClass::kSpace) {
      ++i;
    } else if (cls == ByteClass::kPunct) {
      sink(i, i + 1);
      ++i;
    } else {
      std::size_t j = i + 1;
      while (j < n && classify(static_cast<unsigned char>(text[j])) == ByteClass::kWord) ++j;
      sink(i, j);
      i = j;
    }
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open input file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  scan_tokens(text, [&](std::size_t b, std::size_t e) {
    tokens.push_back(Token{std::string(text.substr(b, e - b)), b, e});
  });
  return tokens;
}

std::size_t count_tokens(std::string_view text) {
  std::size_t n = 0;
  scan_tokens(text, [&](std::size_t, std::size_t) { ++n; });
  return n;
}

bool is_valid_utf8(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto c = static_cast<unsigned char>(text[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xe0) == 0xc0) {
      len = 2;
      cp = c & 0x1f;
    } else if ((c & 0xf0) == 0xe0) {
      len = 3;
      cp = c & 0x0f;
    } else if ((c & 0xf8) == 0xf0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (std::size_t k = 1; k < len; ++k) {
      const auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates and out-of-range code points.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
        cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) {
      return false;
    }
    i += len;
  }
  return true;
}

void ChunkConfig::validate() const {
  if (chunk_size == 0) throw Error(Errc::kInvalidConfig, "chunk_size must be positive");
  if (overlap >= chunk_size) {
    throw Error(Errc::kInvalidConfig, "overlap (" + std::to_string(overlap) +
                                          ") must be smaller than chunk_size (" +
                                          std::to_string(chunk_size) + ")");
  }
}

std::vector<Chunk> chunk_text(const Document& doc, const ChunkConfig& config) {
  config.validate();
  const std::vector<Token> tokens = tokenize(doc.text);
  std::vector<Chunk> chunks;
  const std::size_t n = tokens.size();
  if (n == 0) return chunks;

  const std::size_t stride = config.chunk_size - config.overlap;
  for (std::size_t start = 0;; start += stride) {
    const std::size_t end = std::min(start + config.chunk_size, n);
    const std::size_t byte_begin = tokens[start].begin;
    const std::size_t byte_end = tokens[end - 1].end;
    chunks.push_back(Chunk{doc.id, chunks.size(), doc.text.substr(byte_begin, byte_end - byte_begin),
                           start, end});
    if (end == n) break;
  }
  return chunks;
}

std::vector<Document> read_documents(const std::filesystem::path& path) {
  const std::string content = read_file(path);
  std::vector<Document> docs;
  if (path.extension() != ".jsonl") {
    if (!is_valid_utf8(content)) {
      throw Error(Errc::kInvalidInput, "'" + path.string() + "' is not valid UTF-8");
    }
    docs.push_back(Document{path.stem().string(), content, path.string()});
    return docs;
  }

  std::istringstream lines(content);
  std::string line;
  std::size_t line_no = 0;
  std::unordered_set<std::string> seen;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no);
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(Errc::kInvalidInput, where + ": malformed JSON (" + e.what() + ")");
    }
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() ||
        !rec.contains("text") || !rec["text"].is_string()) {
      throw Error(Errc::kInvalidInput, where + ": expected {\"id\": string, \"text\": string}");
    }
    Document doc{rec["id"].get<std::string>(), rec["text"].get<std::string>(), path.string()};
    if (doc.id.empty()) throw Error(Errc::kInvalidInput, where + ": empty document id");
    if (!seen.insert(doc.id).second) {
      throw Error(Errc::kDuplicateId, where + ": duplicate document id '" + doc.id + "'");
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace gtr
