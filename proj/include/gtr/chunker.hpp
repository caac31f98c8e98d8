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
#include <string>
#include <string_view>
#include <vector>

namespace gtr {

// A token with its byte span [begin, end) in the source text.
struct Token {
  std::string text;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

// Splits on ASCII whitespace. Each ASCII punctuation byte is a token of its
// own; every other run of bytes (letters, digits, non-ASCII UTF-8) forms one
// word token. The same splitter is used for chunking, hashed embeddings,
// ROUGE and token accounting.
std::vector<Token> tokenize(std::string_view text);

// Number of tokens tokenize() would produce, without materializing them.
std::size_t count_tokens(std::string_view text);

bool is_valid_utf8(std::string_view text);

struct Document {
  std::string id;
  std::string text;
  std::optional<std::string> source_path;
};

struct Chunk {
  std::string doc_id;
  std::size_t index = 0;
  std::string text;
  std::size_t token_start = 0;
  std::size_t token_end = 0;  // exclusive

  friend bool operator==(const Chunk&, const Chunk&) = default;
};

struct ChunkConfig {
  std::size_t chunk_size = 512;
  std::size_t overlap = 64;

  // Throws Errc::kInvalidConfig unless 0 < chunk_size and overlap < chunk_size.
  void validate() const;
};

// Sliding token windows of chunk_size tokens starting at multiples of
// chunk_size - overlap. The final window may be shorter; it is kept. Chunk
// text is the exact byte range of the source covering the window's tokens.
std::vector<Chunk> chunk_text(const Document& doc, const ChunkConfig& config);

// Reads documents from a plain UTF-8 text file (one document, id = file stem)
// or a .jsonl file of {"id": ..., "text": ...} records.
std::vector<Document> read_documents(const std::filesystem::path& path);

}  // namespace gtr
