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

#include "gtr/text_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "gtr/chunker.hpp"
#include "gtr/error.hpp"
#include "gtr/vecstore.hpp"

namespace gtr {
namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> ngram_counts(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<Gram, std::size_t> counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[Gram(tokens.begin() + static_cast<std::ptrdiff_t>(i), tokens.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

double mean(double sum, std::size_t n) { return sum / static_cast<double>(n); }

}  // namespace

RougeScore make_rouge_score(std::size_t overlap, std::size_t candidate_total, std::size_t reference_total) {
  RougeScore s{overlap, candidate_total, reference_total, 0.0, 0.0, 0.0};
  if (candidate_total > 0) s.precision = static_cast<double>(overlap) / static_cast<double>(candidate_total);
  if (reference_total > 0) s.recall = static_cast<double>(overlap) / static_cast<double>(reference_total);
  if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::vector<std::string> rouge_tokens(std::string_view text) {
  std::vector<std::string> out;
  for (const Token& t : tokenize(text)) {
    std::string s = t.text;
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(s));
  }
  return out;
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference, std::size_t n) {
  if (n == 0) throw Error(Errc::kInvalidInput, "rouge_n requires n >= 1");
  const auto cand = ngram_counts(rouge_tokens(candidate), n);
  const auto ref = ngram_counts(rouge_tokens(reference), n);
  std::size_t overlap = 0, cand_total = 0, ref_total = 0;
  for (const auto& [gram, count] : cand) {
    cand_total += count;
    if (const auto it = ref.find(gram); it != ref.end()) overlap += std::min(count, it->second);
  }
  for (const auto& [gram, count] : ref) ref_total += count;
  return make_rouge_score(overlap, cand_total, ref_total);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
  const auto cand = rouge_tokens(candidate);
  const auto ref = rouge_tokens(reference);
  return make_rouge_score(lcs_length(cand, ref), cand.size(), ref.size());
}

double sas(std::string_view candidate, std::string_view reference, const Embedder& embedder) {
  if (blank(candidate) || blank(reference)) throw Error(Errc::kEmptyText, "SAS needs a nonempty candidate and reference");
  return cosine(embedder.embed(candidate), embedder.embed(reference));
}

double sas(std::string_view candidate, std::string_view reference, const EmbedderConfig& config) {
  return sas(candidate, reference, *make_embedder(config));
}

GtrEvalItem make_eval_item(std::string question, std::string reference, std::string candidate, bool truthful,
                           double response_time_ms) {
  GtrEvalItem item{std::move(question), std::move(reference), std::move(candidate), truthful, response_time_ms, 0};
  item.candidate_tokens = count_tokens(item.candidate);
  return item;
}

TextEvalReport aggregate(std::span<const GtrEvalItem> items, const Embedder& embedder) {
  if (items.empty()) throw Error(Errc::kInvalidInput, "no evaluation items");
  TextEvalReport r;
  r.count = items.size();
  double truthful = 0, r1 = 0, r2 = 0, rl = 0, s = 0, ms = 0, tokens = 0;
  for (const auto& item : items) {
    ItemScores scores;
    scores.rouge1_p = rouge_n(item.candidate, item.reference, 1).precision;
    scores.rouge2_p = rouge_n(item.candidate, item.reference, 2).precision;
    scores.rougeL_p = rouge_l(item.candidate, item.reference).precision;
    if (!blank(item.candidate) && !blank(item.reference)) scores.sas = sas(item.candidate, item.reference, embedder);
    truthful += item.truthful ? 1.0 : 0.0;
    r1 += scores.rouge1_p;
    r2 += scores.rouge2_p;
    rl += scores.rougeL_p;
    s += scores.sas;
    ms += item.response_time_ms;
    tokens += static_cast<double>(item.candidate_tokens);
    r.items.push_back(scores);
  }
  r.truthful_pct = 100.0 * mean(truthful, r.count);
  r.rouge1_p = mean(r1, r.count);
  r.rouge2_p = mean(r2, r.count);
  r.rougeL_p = mean(rl, r.count);
  r.sas = mean(s, r.count);
  r.resp_ms = mean(ms, r.count);
  r.tokens = mean(tokens, r.count);
  return r;
}

TextEvalReport aggregate(std::span<const GtrEvalItem> items, const EmbedderConfig& config) {
  return aggregate(items, *make_embedder(config));
}

std::vector<GtrEvalItem> read_eval_items(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot read " + path.string());
  std::vector<GtrEvalItem> items;
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (blank(line)) continue;
    const std::string where = path.string() + ":" + std::to_string(lineno) + ": ";
    const auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw Error(Errc::kInvalidInput, where + "not a JSON object");
    auto text = [&](const char* key) {
      if (!j.contains(key) || !j[key].is_string()) {
        throw Error(Errc::kInvalidInput, where + "missing string field '" + key + "'");
      }
      return j[key].get<std::string>();
    };
    bool truthful = false;
    const auto t = j.find("truthful");
    if (t != j.end() && t->is_boolean()) {
      truthful = t->get<bool>();
    } else if (t != j.end() && t->is_number_integer() && (*t == 0 || *t == 1)) {
      truthful = *t == 1;
    } else {
      throw Error(Errc::kInvalidInput, where + "field 'truthful' must be 0, 1, true or false");
    }
    const auto ms = j.find("response_time_ms");
    if (ms == j.end() || !ms->is_number() || ms->get<double>() < 0) {
      throw Error(Errc::kInvalidInput, where + "field 'response_time_ms' must be a nonnegative number");
    }
    items.push_back(make_eval_item(text("question"), text("reference"), text("candidate"), truthful, ms->get<double>()));
  }
  return items;
}

nlohmann::ordered_json to_json(const TextEvalReport& r) {
  return {{"truthful_pct", r.truthful_pct}, {"rouge1_p", r.rouge1_p}, {"rouge2_p", r.rouge2_p},
          {"rougeL_p", r.rougeL_p},         {"sas", r.sas},           {"resp_ms", r.resp_ms},
          {"tokens", r.tokens}};
}

std::string report_jsonl(std::span<const GtrEvalItem> items, const TextEvalReport& report) {
  std::string out;
  for (std::size_t i = 0; i < items.size() && i < report.items.size(); ++i) {
    const auto& s = report.items[i];
    nlohmann::ordered_json j = {{"index", i},
                                {"question", items[i].question},
                                {"truthful", items[i].truthful ? 1 : 0},
                                {"rouge1_p", s.rouge1_p},
                                {"rouge2_p", s.rouge2_p},
                                {"rougeL_p", s.rougeL_p},
                                {"sas", s.sas},
                                {"resp_ms", items[i].response_time_ms},
                                {"tokens", items[i].candidate_tokens}};
    out += j.dump() + "\n";
  }
  out += to_json(report).dump() + "\n";
  return out;
}

std::string summary_table(const TextEvalReport& r) {
  const double values[] = {r.truthful_pct, r.rouge1_p, r.rouge2_p, r.rougeL_p, r.sas, r.resp_ms, r.tokens};
  std::ostringstream os;
  for (auto c : kTextReportColumns) os << std::setw(13) << c;
  os << "\n" << std::fixed;
  for (std::size_t i = 0; i < kTextReportColumns.size(); ++i) {
    os << std::setw(13) << std::setprecision(i == 0 || i >= 5 ? 1 : 4) << values[i];
  }
  os << "\n";
  return os.str();
}

}  // namespace gtr
