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
#include <string>
#include <string_view>
#include <vector>

#include "gtr/error.hpp"

namespace gtr::sql {

enum class TokenKind {
  kWord,         // bare identifier or keyword
  kQuotedIdent,  // `name` or [name]; text holds the unquoted name
  kString,       // 'text' or "text"; text holds the unescaped content
  kNumber,
  kSymbol,
  kEnd,
};

struct SqlToken {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::size_t offset = 0;  // byte offset in the statement

  // Case-insensitive keyword test; false for anything but kWord.
  bool is(std::string_view keyword) const;
  bool is_symbol(std::string_view symbol) const { return kind == TokenKind::kSymbol && text == symbol; }
};

// Failure to lex or parse a statement: byte offset plus the set of token
// descriptions that would have been accepted there.
class SqlParseError : public Error {
 public:
  SqlParseError(std::size_t offset, std::vector<std::string> expected, std::string found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// Double-quoted text is a string literal, as in the Spider corpus. The last
// token is always kEnd at offset sql.size().
std::vector<SqlToken> lex(std::string_view sql);

}  // namespace gtr::sql
