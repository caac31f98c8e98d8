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

#include "gtr/error.hpp"

namespace gtr {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kInvalidConfig: return "InvalidConfig";
    case Errc::kInvalidInput: return "InvalidInput";
    case Errc::kEmptyText: return "EmptyText";
    case Errc::kBackendUnavailable: return "BackendUnavailable";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kZeroVector: return "ZeroVector";
    case Errc::kDuplicateId: return "DuplicateId";
    case Errc::kIo: return "Io";
    case Errc::kCorruptStore: return "CorruptStore";
    case Errc::kMalformedPrompt: return "MalformedPrompt";
    case Errc::kEmptyContext: return "EmptyContext";
    case Errc::kFingerprintMismatch: return "FingerprintMismatch";
    case Errc::kDbUnreadable: return "DbUnreadable";
    case Errc::kEmptySelection: return "EmptySelection";
    case Errc::kEmptyGeneration: return "EmptyGeneration";
    case Errc::kSqlError: return "SqlError";
    case Errc::kNonReadStatement: return "NonReadStatement";
    case Errc::kTimeout: return "Timeout";
    case Errc::kParseError: return "ParseError";
    case Errc::kEvalError: return "EvalError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace gtr
