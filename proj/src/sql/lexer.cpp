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

#include "gtr/sql/lexer.hpp"

#include <algorithm>
#include <cctype>

namespace gtr::sql {
namespace {

bool word_start(unsigned char c) { return std::isalpha(c) || c == '_' || c >= 0x80; }
bool word_char(unsigned char c) { return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80; }
bool digit(char c) { return c >= '0' && c <= '9'; }

std::string describe(const std::vector<std::string>& expected) {
  std::string s;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i) s += ", ";
    s += expected[i];
  }
  return s;
}

}  // namespace

bool SqlToken::is(std::string_view keyword) const {
  if (kind != TokenKind::kWord || text.size() != keyword.size()) return false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (std::toupper(static_cast<unsigned char>(text[i])) != std::toupper(static_cast<unsigned char>(keyword[i]))) {
      return false;
    }
  }
  return true;
}

SqlParseError::SqlParseError(std::size_t offset, std::vector<std::string> expected, std::string found)
    : Error(Errc::kParseError, "at offset " + std::to_string(offset) + ": expected " +
                                   describe(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)) {}

std::vector<SqlToken> lex(std::string_view sql) {
  std::vector<SqlToken> tokens;
  std::size_t i = 0;
  const std::size_t n = sql.size();

  const auto quoted = [&](char close, TokenKind kind, const char* what) {
    const std::size_t start = i;
    std::string text;
    ++i;
    for (;;) {
      if (i >= n) throw SqlParseError(start, {std::string("closing ") + what}, "end of statement");
      if (sql[i] == close) {
        // Doubled delimiter escapes itself, except for ] which cannot.
        if (close != ']' && i + 1 < n && sql[i + 1] == close) {
          text += close;
          i += 2;
          continue;
        }
        ++i;
        break;
      }
      text += sql[i++];
    }
    tokens.push_back(SqlToken{kind, std::move(text), start});
  };

  while (i < n) {
    const char c = sql[i];
    const auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc)) {
      ++i;
    } else if (sql.substr(i, 2) == "--") {
      const auto nl = sql.find('\n', i);
      i = nl == std::string_view::npos ? n : nl + 1;
    } else if (sql.substr(i, 2) == "/*") {
      const auto end = sql.find("*/", i + 2);
      if (end == std::string_view::npos) throw SqlParseError(i, {"end of comment"}, "end of statement");
      i = end + 2;
    } else if (c == '\'') {
      quoted('\'', TokenKind::kString, "'");
    } else if (c == '"') {
      quoted('"', TokenKind::kString, "\"");
    } else if (c == '`') {
      quoted('`', TokenKind::kQuotedIdent, "`");
    } else if (c == '[') {
      quoted(']', TokenKind::kQuotedIdent, "]");
    } else if (digit(c) || (c == '.' && i + 1 < n && digit(sql[i + 1]))) {
      const std::size_t start = i;
      while (i < n && digit(sql[i])) ++i;
      if (i < n && sql[i] == '.') {
        ++i;
        while (i < n && digit(sql[i])) ++i;
      }
      if (i < n && (sql[i] == 'e' || sql[i] == 'E')) {
        std::size_t j = i + 1;
        if (j < n && (sql[j] == '+' || sql[j] == '-')) ++j;
        if (j < n && digit(sql[j])) {
          i = j;
          while (i < n && digit(sql[i])) ++i;
        }
      }
      tokens.push_back(SqlToken{TokenKind::kNumber, std::string(sql.substr(start, i - start)), start});
    } else if (word_start(uc)) {
      const std::size_t start = i;
      while (i < n && word_char(static_cast<unsigned char>(sql[i]))) ++i;
      tokens.push_back(SqlToken{TokenKind::kWord, std::string(sql.substr(start, i - start)), start});
    } else {
      static constexpr std::string_view kTwo[] = {"<=", ">=", "<>", "!=", "==", "||"};
      const auto two = sql.substr(i, 2);
      if (std::find(std::begin(kTwo), std::end(kTwo), two) != std::end(kTwo)) {
        tokens.push_back(SqlToken{TokenKind::kSymbol, std::string(two), i});
        i += 2;
        continue;
      }
      static constexpr std::string_view kOne = "(),.;*+-/%=<>";
      if (kOne.find(c) == std::string_view::npos) {
        throw SqlParseError(i, {"SQL token"}, std::string("'") + c + "'");
      }
      tokens.push_back(SqlToken{TokenKind::kSymbol, std::string(1, c), i});
      ++i;
    }
  }
  tokens.push_back(SqlToken{TokenKind::kEnd, "", n});
  return tokens;
}

}  // namespace gtr::sql
