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

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <sstream>

#include "expect_error.hpp"
#include "test_support.hpp"

namespace gtr {
namespace {

using testing::TempDir;

// Top-down recursion over suffixes; independent of the two-row table.
std::size_t memo_lcs(const std::vector<std::string>& a, const std::vector<std::string>& b, std::size_t i,
                     std::size_t j, std::map<std::pair<std::size_t, std::size_t>, std::size_t>& memo) {
  if (i == a.size() || j == b.size()) return 0;
  const auto key = std::make_pair(i, j);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  const std::size_t v = a[i] == b[j] ? 1 + memo_lcs(a, b, i + 1, j + 1, memo)
                                     : std::max(memo_lcs(a, b, i + 1, j, memo), memo_lcs(a, b, i, j + 1, memo));
  memo.emplace(key, v);
  return v;
}

std::string random_sentence(std::mt19937_64& rng) {
  static const char* kWords[] = {"the", "cat", "sat", "on", "mat", "a", "dog", "ran", "Red", "red", "fox", "."};
  std::uniform_int_distribution<int> len(0, 12), word(0, 11);
  std::string out;
  for (int n = len(rng), i = 0; i < n; ++i) out += std::string(kWords[word(rng)]) + " ";
  return out;
}

TEST(RougeN, Unigrams) {
  const auto s = rouge_n("a b c", "a b d", 1);
  EXPECT_EQ(s.overlap, 2u);
  EXPECT_EQ(s.candidate_total, 3u);
  EXPECT_DOUBLE_EQ(s.precision, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(s.f1, 2.0 / 3.0);
}

TEST(RougeN, Bigrams) {
  const auto s = rouge_n("a b c", "a b d", 2);
  EXPECT_EQ(s.overlap, 1u);
  EXPECT_EQ(s.candidate_total, 2u);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
}

TEST(RougeN, ClippedCounts) {
  const auto s = rouge_n("the the the the", "the cat the", 1);
  EXPECT_EQ(s.overlap, 2u);
  EXPECT_DOUBLE_EQ(s.precision, 0.5);
  EXPECT_DOUBLE_EQ(s.recall, 2.0 / 3.0);
}

TEST(RougeN, CaseInsensitive) { EXPECT_DOUBLE_EQ(rouge_n("The CAT", "the cat", 1).precision, 1.0); }

TEST(RougeN, ShortAndEmpty) {
  EXPECT_DOUBLE_EQ(rouge_n("", "a b", 1).precision, 0.0);
  EXPECT_DOUBLE_EQ(rouge_n("", "a b", 1).f1, 0.0);
  EXPECT_DOUBLE_EQ(rouge_n("a", "a", 2).precision, 0.0);
  EXPECT_EQ(rouge_n("a", "a", 2).candidate_total, 0u);
  EXPECT_GTR_ERROR(rouge_n("a", "a", 0), Errc::kInvalidInput);
}

TEST(RougeL, Example) {
  const auto s = rouge_l("the cat sat on the mat", "the cat is on the mat");
  EXPECT_EQ(s.overlap, 5u);
  EXPECT_DOUBLE_EQ(s.precision, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.recall, 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(s.f1, 5.0 / 6.0);
}

TEST(RougeL, EmptyCandidate) {
  const auto s = rouge_l("", "the cat");
  EXPECT_EQ(s.overlap, 0u);
  EXPECT_DOUBLE_EQ(s.precision, 0.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.0);
  EXPECT_DOUBLE_EQ(rouge_l("", "").f1, 0.0);
}

TEST(RougeL, MatchesMemoizedLcs) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto c = random_sentence(rng), r = random_sentence(rng);
    const auto ct = rouge_tokens(c), rt = rouge_tokens(r);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
    const std::size_t expected = memo_lcs(ct, rt, 0, 0, memo);
    EXPECT_EQ(lcs_length(ct, rt), expected) << c << " | " << r;
    const auto s = rouge_l(c, r);
    EXPECT_EQ(s.overlap, expected);
    EXPECT_EQ(s.candidate_total, ct.size());
    EXPECT_EQ(s.reference_total, rt.size());
    // Swapping the arguments swaps precision and recall.
    const auto t = rouge_l(r, c);
    EXPECT_EQ(t.overlap, s.overlap);
    EXPECT_EQ(t.precision, s.recall);
    EXPECT_EQ(t.recall, s.precision);
  }
}

TEST(MakeRougeScore, Ratios) {
  const auto s = make_rouge_score(3, 4, 6);
  EXPECT_DOUBLE_EQ(s.precision, 0.75);
  EXPECT_DOUBLE_EQ(s.recall, 0.5);
  EXPECT_DOUBLE_EQ(s.f1, 0.6);
  EXPECT_DOUBLE_EQ(make_rouge_score(0, 0, 0).f1, 0.0);
}

TEST(Sas, HashedBow) {
  EmbedderConfig cfg;
  const auto embedder = make_embedder(cfg);
  EXPECT_NEAR(sas("the cat sat", "the cat sat", *embedder), 1.0, 1e-12);
  // Disjoint hash buckets at dim 384.
  EXPECT_NEAR(sas("apple pie", "red fox", *embedder), 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(sas("a cat", "the cat sat", *embedder), sas("the cat sat", "a cat", *embedder));
  EXPECT_DOUBLE_EQ(sas("a cat", "the cat sat", cfg), sas("a cat", "the cat sat", *embedder));
  EXPECT_GTR_ERROR(sas("   ", "x", *embedder), Errc::kEmptyText);
}

TEST(EvalItem, CountsTokens) {
  const auto item = make_eval_item("q", "r", "the cat, sat", true, 12.5);
  EXPECT_EQ(item.candidate_tokens, 4u);
  EXPECT_TRUE(item.truthful);
}

TEST(Aggregate, Means) {
  std::vector<GtrEvalItem> items = {
      make_eval_item("q1", "the cat", "the cat", true, 10),
      make_eval_item("q2", "the cat", "the dog", true, 20),
      make_eval_item("q3", "a b c", "a b d", true, 30),
      make_eval_item("q4", "x", "", false, 40),
  };
  const auto r = aggregate(items, EmbedderConfig{});
  EXPECT_EQ(r.count, 4u);
  EXPECT_DOUBLE_EQ(r.truthful_pct, 75.0);
  EXPECT_DOUBLE_EQ(r.resp_ms, 25.0);
  EXPECT_DOUBLE_EQ(r.tokens, (2 + 2 + 3 + 0) / 4.0);
  EXPECT_DOUBLE_EQ(r.rouge1_p, (1.0 + 0.5 + 2.0 / 3.0 + 0.0) / 4.0);
  EXPECT_DOUBLE_EQ(r.rouge2_p, (1.0 + 0.0 + 0.5 + 0.0) / 4.0);
  ASSERT_EQ(r.items.size(), 4u);
  EXPECT_DOUBLE_EQ(r.items[3].sas, 0.0);
  EXPECT_NEAR(r.items[0].sas, 1.0, 1e-12);
  EXPECT_GTR_ERROR(aggregate(std::vector<GtrEvalItem>{}, EmbedderConfig{}), Errc::kInvalidInput);
}

TEST(Aggregate, ReportColumns) {
  const std::vector<GtrEvalItem> items = {make_eval_item("q", "the cat", "the cat", true, 5)};
  const auto r = aggregate(items, EmbedderConfig{});
  const auto j = to_json(r);
  ASSERT_EQ(j.size(), kTextReportColumns.size());
  std::size_t i = 0;
  for (const auto& [key, value] : j.items()) EXPECT_EQ(key, kTextReportColumns[i++]);

  std::istringstream lines(report_jsonl(items, r));
  std::string first, second, rest;
  std::getline(lines, first);
  std::getline(lines, second);
  EXPECT_FALSE(std::getline(lines, rest));
  EXPECT_EQ(nlohmann::json::parse(first)["question"], "q");
  EXPECT_EQ(nlohmann::json::parse(second).size(), 7u);

  const auto table = summary_table(r);
  for (auto col : kTextReportColumns) EXPECT_NE(table.find(col), std::string::npos) << col;
}

TEST(ReadEvalItems, Parses) {
  TempDir dir;
  testing::write_text(dir / "items.jsonl",
                      R"({"question":"q1","reference":"r","candidate":"c d","truthful":1,"response_time_ms":3})"
                      "\n\n"
                      R"({"question":"q2","reference":"r","candidate":"c","truthful":false,"response_time_ms":4.5})"
                      "\n");
  const auto items = read_eval_items(dir / "items.jsonl");
  ASSERT_EQ(items.size(), 2u);
  EXPECT_TRUE(items[0].truthful);
  EXPECT_EQ(items[0].candidate_tokens, 2u);
  EXPECT_FALSE(items[1].truthful);
  EXPECT_DOUBLE_EQ(items[1].response_time_ms, 4.5);
}

TEST(ReadEvalItems, ErrorsNameLine) {
  TempDir dir;
  const std::string good = R"({"question":"q","reference":"r","candidate":"c","truthful":1,"response_time_ms":1})";
  for (const std::string& bad :
       {std::string("{not json"), std::string(R"({"question":"q","reference":"r","truthful":1,"response_time_ms":1})"),
        std::string(R"({"question":"q","reference":"r","candidate":"c","truthful":2,"response_time_ms":1})"),
        std::string(R"({"question":"q","reference":"r","candidate":"c","truthful":1,"response_time_ms":-1})")}) {
    testing::write_text(dir / "items.jsonl", good + "\n" + good + "\n" + bad + "\n");
    try {
      read_eval_items(dir / "items.jsonl");
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kInvalidInput);
      EXPECT_NE(std::string(e.what()).find("items.jsonl:3"), std::string::npos) << e.what();
    }
  }
  EXPECT_GTR_ERROR(read_eval_items(dir / "missing.jsonl"), Errc::kIo);
}

}  // namespace
}  // namespace gtr
