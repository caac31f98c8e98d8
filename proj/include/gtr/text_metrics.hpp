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

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gtr/embedder.hpp"

namespace gtr {

// Precision and recall keep their integer ratio so callers can check scores
// exactly: precision = overlap / candidate_total, recall = overlap / reference_total.
struct RougeScore {
  std::size_t overlap = 0;
  std::size_t candidate_total = 0;
  std::size_t reference_total = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

RougeScore make_rouge_score(std::size_t overlap, std::size_t candidate_total, std::size_t reference_total);

// Shared tokenizer output, ASCII-lowercased.
std::vector<std::string> rouge_tokens(std::string_view text);

// Clipped n-gram overlap. Throws Errc::kInvalidInput for n == 0.
RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n);

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);
RougeScore rouge_l(std::string_view candidate, std::string_view reference);

// Cosine of the two embeddings. Throws Errc::kEmptyText on blank input.
double sas(std::string_view candidate, std::string_view reference, const Embedder& embedder);
double sas(std::string_view candidate, std::string_view reference, const EmbedderConfig& config);

struct GtrEvalItem {
  std::string question;
  std::string reference;
  std::string candidate;
  bool truthful = false;
  double response_time_ms = 0.0;
  std::size_t candidate_tokens = 0;  // count_tokens(candidate)
};

GtrEvalItem make_eval_item(std::string question, std::string reference, std::string candidate, bool truthful,
                           double response_time_ms);

struct ItemScores {
  double rouge1_p = 0.0;
  double rouge2_p = 0.0;
  double rougeL_p = 0.0;
  double sas = 0.0;
};

inline constexpr std::array<std::string_view, 7> kTextReportColumns = {
    "truthful_pct", "rouge1_p", "rouge2_p", "rougeL_p", "sas", "resp_ms", "tokens"};

struct TextEvalReport {
  std::size_t count = 0;
  double truthful_pct = 0.0;
  double rouge1_p = 0.0;
  double rouge2_p = 0.0;
  double rougeL_p = 0.0;
  double sas = 0.0;
  double resp_ms = 0.0;
  double tokens = 0.0;
  std::vector<ItemScores> items;
};

// Means over the items. An item with a blank candidate or reference has SAS 0.
// Throws Errc::kInvalidInput on an empty list.
TextEvalReport aggregate(std::span<const GtrEvalItem> items, const Embedder& embedder);
TextEvalReport aggregate(std::span<const GtrEvalItem> items, const EmbedderConfig& config);

// JSONL with keys question, reference, candidate, truthful (0/1 or bool),
// response_time_ms. Errors name path:line.
std::vector<GtrEvalItem> read_eval_items(const std::filesystem::path& path);

// Exactly the kTextReportColumns keys, in that order.
nlohmann::ordered_json to_json(const TextEvalReport& report);

// One object per item, then the summary object.
std::string report_jsonl(std::span<const GtrEvalItem> items, const TextEvalReport& report);

std::string summary_table(const TextEvalReport& report);

}  // namespace gtr
