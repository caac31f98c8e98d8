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

#include "gtr/llm_gateway.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gtr/chunker.hpp"
#include "gtr/error.hpp"
#include "http_json.hpp"

namespace gtr {
namespace {

constexpr std::string_view kContextOpen = "Context:\n";
constexpr std::string_view kContextClose = "\n\nQuestion: ";
constexpr std::string_view kQuestionPrefix = "Question: ";

class EchoContextModel final : public LanguageModel {
 public:
  std::string generate(std::string_view prompt) const override {
    const auto open = prompt.find(kContextOpen);
    if (open == std::string_view::npos) {
      throw Error(Errc::kMalformedPrompt, "prompt has no \"Context:\" section");
    }
    const auto body = open + kContextOpen.size();
    const auto close = prompt.rfind(kContextClose);
    if (close == std::string_view::npos || close < body) {
      throw Error(Errc::kMalformedPrompt, "prompt has no question after its context");
    }
    return std::string(prompt.substr(body, close - body));
  }
};

class TemplateSqlModel final : public LanguageModel {
 public:
  explicit TemplateSqlModel(std::map<std::string, std::string> templates)
      : templates_(std::move(templates)) {}

  std::string generate(std::string_view prompt) const override {
    if (const auto question = extract_question(prompt)) {
      if (const auto it = templates_.find(*question); it != templates_.end()) return it->second;
    }
    return std::string(kUnknownQuestionSql);
  }

 private:
  std::map<std::string, std::string> templates_;
};

class FixedModel final : public LanguageModel {
 public:
  explicit FixedModel(std::string text) : text_(std::move(text)) {}
  std::string generate(std::string_view) const override { return text_; }

 private:
  std::string text_;
};

class HttpModel final : public LanguageModel {
 public:
  explicit HttpModel(LlmConfig config) : config_(std::move(config)) {}

  std::string generate(std::string_view prompt) const override {
    nlohmann::json body;
    body["prompt"] = std::string(prompt);
    body["max_tokens"] = config_.max_new_tokens;
    body["temperature"] = config_.temperature;
    const nlohmann::json reply = detail::post_json(
        *config_.endpoint_url, body,
        detail::HttpPolicy{config_.timeout, config_.max_attempts, config_.initial_backoff});
    try {
      return reply.at("choices").at(0).at("text").get<std::string>();
    } catch (const nlohmann::json::exception&) {
      throw Error(Errc::kBackendUnavailable, "completion reply lacks choices[0].text");
    }
  }

 private:
  LlmConfig config_;
};

}  // namespace

std::string_view to_string(LlmBackend backend) {
  switch (backend) {
    case LlmBackend::kEchoContext: return "echo_context";
    case LlmBackend::kTemplateSql: return "template_sql";
    case LlmBackend::kFixed: return "fixed";
    case LlmBackend::kHttp: return "http";
  }
  return "unknown";
}

void LlmConfig::validate() const {
  if (max_new_tokens == 0) throw Error(Errc::kInvalidConfig, "max_new_tokens must be positive");
  if (!(temperature >= 0.0)) throw Error(Errc::kInvalidConfig, "temperature must be nonnegative");
  const bool has_url = endpoint_url.has_value() && !endpoint_url->empty();
  if ((backend == LlmBackend::kHttp) != has_url) {
    throw Error(Errc::kInvalidConfig, backend == LlmBackend::kHttp
                                          ? "http llm backend requires an endpoint url"
                                          : "endpoint url is only valid for the http llm backend");
  }
  if ((backend == LlmBackend::kFixed) != fixed_text.has_value()) {
    throw Error(Errc::kInvalidConfig, backend == LlmBackend::kFixed
                                          ? "fixed llm backend requires fixed_text"
                                          : "fixed_text is only valid for the fixed llm backend");
  }
}

Completion LanguageModel::complete(std::string_view prompt) const {
  if (prompt.empty()) throw Error(Errc::kInvalidInput, "prompt must be non-empty");
  const auto start = std::chrono::steady_clock::now();
  Completion c;
  c.text = generate(prompt);
  c.latency_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  c.prompt_tokens = count_tokens(prompt);
  c.completion_tokens = count_tokens(c.text);
  return c;
}

std::unique_ptr<LanguageModel> make_language_model(const LlmConfig& config) {
  config.validate();
  switch (config.backend) {
    case LlmBackend::kEchoContext: return std::make_unique<EchoContextModel>();
    case LlmBackend::kTemplateSql: return std::make_unique<TemplateSqlModel>(config.sql_templates);
    case LlmBackend::kFixed: return std::make_unique<FixedModel>(*config.fixed_text);
    case LlmBackend::kHttp: return std::make_unique<HttpModel>(config);
  }
  throw Error(Errc::kInvalidConfig, "unknown llm backend");
}

Completion complete(std::string_view prompt, const LlmConfig& config) {
  return make_language_model(config)->complete(prompt);
}

std::optional<std::string> extract_question(std::string_view prompt) {
  std::optional<std::string> found;
  std::size_t pos = 0;
  while (pos <= prompt.size()) {
    const auto nl = prompt.find('\n', pos);
    const auto line = prompt.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    if (line.starts_with(kQuestionPrefix)) found = std::string(line.substr(kQuestionPrefix.size()));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return found;
}

std::map<std::string, std::string> load_sql_templates(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open template file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str()).get<std::map<std::string, std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::kInvalidInput,
                "'" + path.string() + "' must be a JSON object of question -> SQL: " + e.what());
  }
}

}  // namespace gtr
