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
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

struct sqlite3;

namespace gtr {

struct Blob {
  std::vector<unsigned char> bytes;
  friend bool operator==(const Blob&, const Blob&) = default;
};

// One cell of a result row; std::monostate is SQL NULL.
using Value = std::variant<std::monostate, std::int64_t, double, std::string, Blob>;

// Display text of a value: NULL -> "", reals keep a decimal point, blobs as hex.
std::string value_to_text(const Value& value);

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
  bool truncated = false;  // row_limit was reached before the statement finished
};

struct ExecLimits {
  std::chrono::milliseconds timeout{10000};
  std::size_t row_limit = 1000;
};

// Read-only connection to an SQLite database file. Every statement it runs
// must be one that SQLite itself classifies as read-only.
class Database {
 public:
  // Throws Errc::kDbUnreadable when the file is missing or not a database.
  static Database open_readonly(const std::filesystem::path& path);

  Database(Database&& other) noexcept;
  Database& operator=(Database&& other) noexcept;
  Database(const Database&) = delete;
  Database& operator=(const Database&) = delete;
  ~Database();

  const std::filesystem::path& path() const noexcept { return path_; }
  // File stem; Spider names databases <db_id>/<db_id>.sqlite.
  std::string db_id() const { return path_.stem().string(); }

  // Runs exactly one statement. Throws Errc::kSqlError with the engine's
  // message, Errc::kNonReadStatement or Errc::kTimeout.
  ResultSet query(std::string_view sql, const ExecLimits& limits) const;

  // Compiles without running. Throws Errc::kSqlError on syntax errors,
  // unknown tables or columns, and trailing statements.
  void compile(std::string_view sql) const;

  sqlite3* handle() const noexcept { return db_; }

 private:
  Database(sqlite3* db, std::filesystem::path path) : db_(db), path_(std::move(path)) {}

  sqlite3* db_ = nullptr;
  std::filesystem::path path_;
};

// Quotes an identifier for SQLite ("" doubling).
std::string quote_identifier(std::string_view name);

}  // namespace gtr
