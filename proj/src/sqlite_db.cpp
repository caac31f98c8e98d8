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

#include "gtr/sqlite_db.hpp"

#include <charconv>
#include <memory>
#include <utility>
#include <cmath>

#include <sqlite3.h>

#include "gtr/error.hpp"

namespace gtr {
namespace {

struct Deadline {
  std::chrono::steady_clock::time_point at;
  bool expired = false;
};

int check_deadline(void* arg) {
  auto* d = static_cast<Deadline*>(arg);
  if (std::chrono::steady_clock::now() >= d->at) {
    d->expired = true;
    return 1;
  }
  return 0;
}

// Clears the progress handler however the statement ends.
struct ProgressGuard {
  sqlite3* db;
  ~ProgressGuard() { sqlite3_progress_handler(db, 0, nullptr, nullptr); }
};

struct StmtDeleter {
  void operator()(sqlite3_stmt* s) const { sqlite3_finalize(s); }
};
using StmtPtr = std::unique_ptr<sqlite3_stmt, StmtDeleter>;

bool only_trivia(std::string_view rest) {
  std::size_t i = 0;
  while (i < rest.size()) {
    const char c = rest[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ';' || c == '\f' || c == '\v') {
      ++i;
    } else if (rest.substr(i, 2) == "--") {
      const auto nl = rest.find('\n', i);
      i = nl == std::string_view::npos ? rest.size() : nl + 1;
    } else if (rest.substr(i, 2) == "/*") {
      const auto end = rest.find("*/", i + 2);
      i = end == std::string_view::npos ? rest.size() : end + 2;
    } else {
      return false;
    }
  }
  return true;
}

Value read_column(sqlite3_stmt* stmt, int col) {
  switch (sqlite3_column_type(stmt, col)) {
    case SQLITE_INTEGER:
      return static_cast<std::int64_t>(sqlite3_column_int64(stmt, col));
    case SQLITE_FLOAT:
      return sqlite3_column_double(stmt, col);
    case SQLITE_TEXT: {
      const auto* p = reinterpret_cast<const char*>(sqlite3_column_text(stmt, col));
      return std::string(p, static_cast<std::size_t>(sqlite3_column_bytes(stmt, col)));
    }
    case SQLITE_BLOB: {
      const auto* p = static_cast<const unsigned char*>(sqlite3_column_blob(stmt, col));
      const auto n = static_cast<std::size_t>(sqlite3_column_bytes(stmt, col));
      return Blob{std::vector<unsigned char>(p, p + n)};
    }
    default:
      return std::monostate{};
  }
}

StmtPtr prepare_statement(sqlite3* db, std::string_view sql) {
  sqlite3_stmt* raw = nullptr;
  const char* tail = nullptr;
  const int prc = sqlite3_prepare_v2(db, sql.data(), static_cast<int>(sql.size()), &raw, &tail);
  StmtPtr stmt(raw);
  if (prc != SQLITE_OK) throw Error(Errc::kSqlError, sqlite3_errmsg(db));
  if (!stmt) throw Error(Errc::kSqlError, "empty statement");
  const std::size_t consumed = static_cast<std::size_t>(tail - sql.data());
  if (!only_trivia(sql.substr(consumed))) {
    throw Error(Errc::kSqlError, "only a single statement may be executed");
  }
  return stmt;
}

}  // namespace

std::string value_to_text(const Value& value) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (!std::isfinite(v)) return std::isnan(v) ? "NaN" : (v > 0 ? "Inf" : "-Inf");
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof(buf), v);
      std::string s(buf, res.ptr);
      if (s.find_first_of(".e") == std::string::npos) s += ".0";
      return s;
    }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(const Blob& v) const {
      static constexpr char kHex[] = "0123456789ABCDEF";
      std::string s;
      for (unsigned char b : v.bytes) {
        s += kHex[b >> 4];
        s += kHex[b & 0xf];
      }
      return s;
    }
  };
  return std::visit(Visitor{}, value);
}

std::string quote_identifier(std::string_view name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Database Database::open_readonly(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(Errc::kDbUnreadable, "database file '" + path.string() + "' does not exist");
  }
  sqlite3* db = nullptr;
  const int rc = sqlite3_open_v2(path.string().c_str(), &db, SQLITE_OPEN_READONLY, nullptr);
  if (rc != SQLITE_OK) {
    std::string msg = db ? sqlite3_errmsg(db) : sqlite3_errstr(rc);
    sqlite3_close(db);
    throw Error(Errc::kDbUnreadable, "cannot open '" + path.string() + "': " + msg);
  }
  Database handle(db, path);
  // Opening is lazy; touching the schema surfaces "file is not a database".
  const int probe = sqlite3_exec(db, "SELECT count(*) FROM sqlite_master", nullptr, nullptr, nullptr);
  if (probe != SQLITE_OK) {
    throw Error(Errc::kDbUnreadable, "'" + path.string() + "' is unreadable: " + sqlite3_errmsg(db));
  }
  return handle;
}

Database::Database(Database&& other) noexcept
    : db_(std::exchange(other.db_, nullptr)), path_(std::move(other.path_)) {}

Database& Database::operator=(Database&& other) noexcept {
  if (this != &other) {
    sqlite3_close(db_);
    db_ = std::exchange(other.db_, nullptr);
    path_ = std::move(other.path_);
  }
  return *this;
}

Database::~Database() { sqlite3_close(db_); }

void Database::compile(std::string_view sql) const { prepare_statement(db_, sql); }

ResultSet Database::query(std::string_view sql, const ExecLimits& limits) const {
  StmtPtr stmt = prepare_statement(db_, sql);
  if (!sqlite3_stmt_readonly(stmt.get())) {
    throw Error(Errc::kNonReadStatement, "statement would modify the database");
  }

  ResultSet result;
  const int ncols = sqlite3_column_count(stmt.get());
  for (int c = 0; c < ncols; ++c) {
    const char* name = sqlite3_column_name(stmt.get(), c);
    result.columns.emplace_back(name ? name : "");
  }

  Deadline deadline{std::chrono::steady_clock::now() + limits.timeout};
  ProgressGuard guard{db_};
  sqlite3_progress_handler(db_, 1000, &check_deadline, &deadline);

  for (;;) {
    if (deadline.at <= std::chrono::steady_clock::now()) {
      throw Error(Errc::kTimeout, "statement exceeded " + std::to_string(limits.timeout.count()) + " ms");
    }
    const int rc = sqlite3_step(stmt.get());
    if (rc == SQLITE_DONE) break;
    if (rc != SQLITE_ROW) {
      if (deadline.expired || rc == SQLITE_INTERRUPT) {
        throw Error(Errc::kTimeout, "statement exceeded " + std::to_string(limits.timeout.count()) + " ms");
      }
      throw Error(Errc::kSqlError, sqlite3_errmsg(db_));
    }
    if (result.rows.size() == limits.row_limit) {
      result.truncated = true;
      break;
    }
    std::vector<Value> row;
    row.reserve(static_cast<std::size_t>(ncols));
    for (int c = 0; c < ncols; ++c) row.push_back(read_column(stmt.get(), c));
    result.rows.push_back(std::move(row));
  }
  return result;
}

}  // namespace gtr
