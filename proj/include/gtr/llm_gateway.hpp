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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace gtr {

enum class LlmBackend { kEchoContext, kTemplateSql, kFixed, kHttp };

std::string_view to_string(LlmBackend backend);

struct LlmConfig {
  LlmBackend backend = LlmBackend::kEchoContext;
  std::optional<std::string> endpoint_url;
  std::size_t max_new_tokens = 256;
  double temperature = 0.0;
  std::optional<std::string> fixed_text;
  // template_sql: question text -> SQL returned verbatim.
  std::map<std::string, std::string> sql_templates;
  std::chrono::milliseconds timeout{60000};
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{200};

  void validate() const;
};

struct Completion {
  std::string text;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  double latency_ms = 0.0;
};

// Returned by template_sql when the question is not registered.
inline constexpr std::string_view kUnknownQuestionSql = "SELECT NULL;";

class LanguageModel {
 public:
  virtual ~LanguageModel() = default;
  // Raw completion text for prompt.
  virtual std::string generate(std::string_view prompt) const = 0;

  // Wraps generate() with token accounting and wall-clock latency.
  Completion complete(std::string_view prompt) const;
};

// Backends:
//   echo_context  the text between "Context:\n" and "\n\nQuestion: " verbatim
//   template_sql  the SQL registered for the prompt's last "Question: " line
//   fixed         fixed_text
//   http          OpenAI-compatible completions endpoint
std::unique_ptr<LanguageModel> make_language_model(const LlmConfig& config);

// Throws Errc::kInvalidInput on an empty prompt, Errc::kMalformedPrompt
// (echo_context without delimiters) or Errc::kBackendUnavailable (http).
Completion complete(std::string_view prompt, const LlmConfig& config);

// Text of the last line starting with "Question: ", if any.
std::optional<std::string> extract_question(std::string_view prompt);

// Reads a template_sql registry: a JSON object mapping question -> SQL.
std::map<std::string, std::string> load_sql_templates(const std::filesystem::path& path);

}  // namespace gtr
