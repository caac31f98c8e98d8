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

#include <stdexcept>
#include <string>
#include <string_view>

namespace gtr {

enum class Errc {
  kInvalidConfig,
  kInvalidInput,
  kEmptyText,
  kBackendUnavailable,
  kDimensionMismatch,
  kZeroVector,
  kDuplicateId,
  kIo,
  kCorruptStore,
  kMalformedPrompt,
  kEmptyContext,
  kFingerprintMismatch,
  kDbUnreadable,
  kEmptySelection,
  kEmptyGeneration,
  kSqlError,
  kNonReadStatement,
  kTimeout,
  kParseError,
  kEvalError,
};

// Stable CamelCase name used in diagnostics and JSON reports.
std::string_view to_string(Errc code);

// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  // Message without the "<Code>: " prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace gtr
