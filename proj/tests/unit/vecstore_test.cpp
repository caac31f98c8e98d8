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

#include "gtr/vecstore.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "expect_error.hpp"
#include "test_support.hpp"

namespace gtr {
namespace {

VectorRecord rec(std::string id, std::vector<double> v, std::string text = "t") {
  return VectorRecord{std::move(id), EmbeddingVector(std::move(v)), Payload{RecordKind::kChunk, std::move(text), {}}};
}

std::vector<double> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> d;
  std::vector<double> v(dim);
  for (auto& x : v) x = d(rng);
  return v;
}

VectorStore random_store(std::mt19937_64& rng, std::size_t n, std::size_t dim) {
  VectorStore s(dim, "test");
  for (std::size_t i = 0; i < n; ++i) {
    VectorRecord r = rec("r" + std::to_string(i), random_vector(rng, dim), "text " + std::to_string(i));
    r.payload.metadata["n"] = std::to_string(i);
    if (i % 3 == 0) r.payload.kind = RecordKind::kTable;
    s.insert(std::move(r));
  }
  return s;
}

TEST(Cosine, Fixtures) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_NEAR(cosine(a, b), 32.0 / std::sqrt(14.0 * 77.0), 1e-12);
  EXPECT_NEAR(cosine(a, b), 0.974631846, 1e-9);
  EXPECT_EQ(cosine(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 0.0);
  EXPECT_EQ(cosine(a, a), 1.0);
}

TEST(Cosine, IdentityIsExact) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_vector(rng, 1 + i % 384);
    EXPECT_EQ(cosine(u, u), 1.0);
    std::vector<double> scaled = u;
    for (double& x : scaled) x *= 1e100;
    EXPECT_NEAR(cosine(scaled, u), 1.0, 1e-12);
  }
  const std::vector<double> tiny{1e-150, 2e-150};
  EXPECT_NEAR(cosine(tiny, tiny), 1.0, 1e-15);
}

TEST(Cosine, SymmetryAndBounds) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto u = random_vector(rng, 1 + i % 17);
    const auto v = random_vector(rng, u.size());
    const double c = cosine(u, v);
    EXPECT_EQ(c, cosine(v, u));
    EXPECT_LE(c, 1.0);
    EXPECT_GE(c, -1.0);
    EXPECT_NEAR(c, testing::naive_cosine(u, v), 1e-12);
  }
  const std::vector<double> x{1.0, 3.0}, y{-2.0, -6.0};
  EXPECT_GE(cosine(x, y), -1.0);
}

TEST(Cosine, Errors) {
  EXPECT_GTR_ERROR(cosine(std::vector<double>{1, 2}, std::vector<double>{1, 2, 3}), Errc::kDimensionMismatch);
  EXPECT_GTR_ERROR(cosine(std::vector<double>{0, 0}, std::vector<double>{1, 2}), Errc::kZeroVector);
}

TEST(VectorStore, InsertAndSelfQuery) {
  VectorStore s(3, "fp");
  EXPECT_TRUE(s.empty());
  s.insert(rec("a", {1, 2, 3}));
  EXPECT_EQ(s.size(), 1u);
  const auto top = s.query_top_k(EmbeddingVector({1, 2, 3}), 1);
  ASSERT_EQ(top.size(), 1u);
  EXPECT_EQ(top[0].id, "a");
  EXPECT_EQ(top[0].score, 1.0);
}

TEST(VectorStore, InsertErrors) {
  VectorStore s(384, "fp");
  EXPECT_GTR_ERROR(s.insert(rec("a", {1, 2, 3})), Errc::kDimensionMismatch);
  VectorStore t(2, "fp");
  t.insert(rec("a", {1, 0}));
  EXPECT_GTR_ERROR(t.insert(rec("a", {0, 1})), Errc::kDuplicateId);
  EXPECT_GTR_ERROR(t.insert(rec("z", {0, 0})), Errc::kZeroVector);
  EXPECT_GTR_ERROR(t.insert(rec("", {0, 1})), Errc::kInvalidInput);
  EXPECT_GTR_ERROR(t.insert(rec("bad\xff", {0, 1})), Errc::kInvalidInput);
  EXPECT_EQ(t.size(), 1u);
}

TEST(VectorStore, QueryEdgeCases) {
  VectorStore s(2, "fp");
  EXPECT_TRUE(s.query_top_k(EmbeddingVector({1, 0}), 3).empty());
  s.insert(rec("b", {1, 0}));
  s.insert(rec("a", {0, 1}));
  s.insert(rec("c", {1, 1}));
  const auto all = s.query_top_k(EmbeddingVector({1, 0.1}), 10);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0].id, "b");
  EXPECT_EQ(all[1].id, "c");
  EXPECT_EQ(all[2].id, "a");
  EXPECT_GTR_ERROR(s.query_top_k(EmbeddingVector({1, 0}), 0), Errc::kInvalidInput);
  EXPECT_GTR_ERROR(s.query_top_k(EmbeddingVector({1, 0, 0}), 1), Errc::kDimensionMismatch);
}

TEST(VectorStore, TiesBreakByAscendingId) {
  VectorStore s(2, "fp");
  s.insert(rec("zeta", {2, 0}));
  s.insert(rec("alpha", {1, 0}));
  s.insert(rec("mid", {3, 0}));
  const auto top = s.query_top_k(EmbeddingVector({1, 0}), 3);
  EXPECT_EQ(top[0].id, "alpha");
  EXPECT_EQ(top[1].id, "mid");
  EXPECT_EQ(top[2].id, "zeta");
  EXPECT_EQ(s.query_top_k(EmbeddingVector({1, 0}), 1)[0].id, "alpha");
}

TEST(VectorStore, MatchesBruteForce) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t dim = 1 + rng() % 40;
    const auto store = random_store(rng, rng() % 300, dim);
    const auto q = random_vector(rng, dim);
    for (std::size_t k : {1u, 5u, 1000u}) {
      const auto got = store.query_top_k(EmbeddingVector(q), k);
      const auto want = testing::brute_force_top_k(store, q, k);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].id, want[i].id);
        EXPECT_NEAR(got[i].score, want[i].score, 1e-12);
      }
    }
  }
}

TEST(VectorStore, ScaleInvariantRanking) {
  std::mt19937_64 rng(5);
  const auto store = random_store(rng, 100, 12);
  auto q = random_vector(rng, 12);
  const auto base = store.query_top_k(EmbeddingVector(q), 20);
  for (double c : {0.001, 3.0, 1e6}) {
    auto scaled = q;
    for (auto& x : scaled) x *= c;
    const auto got = store.query_top_k(EmbeddingVector(scaled), 20);
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].id, base[i].id);
  }
}

TEST(VectorStore, FindAndMaterialize) {
  VectorStore s(2, "fp");
  VectorRecord r = rec("x", {0.5, -0.25}, "hello");
  r.payload.metadata["k"] = "v";
  s.insert(r);
  ASSERT_TRUE(s.find("x"));
  EXPECT_FALSE(s.find("y"));
  EXPECT_EQ(s.materialize(0), r);
  EXPECT_EQ(s.record(0).payload->text, "hello");
}

TEST(Persistence, EmptyRoundTrip) {
  testing::TempDir dir;
  VectorStore s(5, "fp/x");
  s.save(dir / "s.jsonl");
  const auto back = VectorStore::load(dir / "s.jsonl");
  EXPECT_EQ(back, s);
  EXPECT_EQ(back.dim(), 5u);
  EXPECT_EQ(back.embedder_fingerprint(), "fp/x");
}

TEST(Persistence, RandomRoundTripIsByteIdentical) {
  testing::TempDir dir;
  std::mt19937_64 rng(9);
  const auto s = random_store(rng, 100, 16);
  s.save(dir / "a.jsonl");
  const auto back = VectorStore::load(dir / "a.jsonl");
  EXPECT_EQ(back, s);
  back.save(dir / "b.jsonl");
  EXPECT_EQ(testing::read_text(dir / "a.jsonl"), testing::read_text(dir / "b.jsonl"));
}

TEST(Persistence, ExactDoublesAndSpecialText) {
  VectorStore s(3, "fp");
  VectorRecord r = rec("q\"uote", {-0.0, 1e-310, 0.1 + 0.2}, "line\nbreak \xc3\xa9 \"q\"");
  r.payload.metadata = {{"z", "1"}, {"a", "\t"}};
  s.insert(r);
  const auto text = s.serialize();
  EXPECT_NE(text.find("-0.0"), std::string::npos);
  const auto back = VectorStore::deserialize(text);
  EXPECT_EQ(back.materialize(0), r);
  EXPECT_TRUE(std::signbit(back.record(0).vector[0]));
  EXPECT_EQ(back.serialize(), text);
}

TEST(Persistence, HeaderFormat) {
  VectorStore s(2, "hashed_bow/dim=2/seed=cbf29ce484222325");
  EXPECT_EQ(s.serialize(),
            "{\"format\":\"gtr-store\",\"version\":1,\"dim\":2,\"embedder\":\"hashed_bow/dim=2/seed=cbf29ce484222325\"}\n");
}

TEST(Persistence, CorruptionIsReportedWithLine) {
  VectorStore s(2, "fp");
  s.insert(rec("a", {1, 0}));
  s.insert(rec("b", {0, 1}));
  const std::string good = s.serialize();

  auto expect_corrupt = [](const std::string& text, const std::string& where) {
    try {
      VectorStore::deserialize(text, "s.jsonl");
      ADD_FAILURE() << "expected CorruptStore";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::kCorruptStore) << e.what();
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  std::string wrong_dim = good;
  wrong_dim.replace(wrong_dim.find("\"dim\":2"), 7, "\"dim\":3");
  expect_corrupt(wrong_dim, "s.jsonl:2");
  expect_corrupt(good + "{not json\n", "s.jsonl:4");
  expect_corrupt("", "s.jsonl:1");
  expect_corrupt("{\"format\":\"other\"}\n", "s.jsonl:1");
  std::string dup = good + good.substr(good.find('\n') + 1, good.find('\n', good.find('\n') + 1) - good.find('\n'));
  expect_corrupt(dup, "s.jsonl:4");
}

TEST(Persistence, MissingFile) {
  testing::TempDir dir;
  EXPECT_GTR_ERROR(VectorStore::load(dir / "nope.jsonl"), Errc::kIo);
}

}  // namespace
}  // namespace gtr
