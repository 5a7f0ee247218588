// Copyright 2026 The MoD Authors.
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

#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mod/embed/embedder.hpp"
#include "mod/ingest/article.hpp"
#include "mod/ingest/normalize.hpp"
#include "support/mock_server.hpp"

using mod::EmbeddingVector;
using mod::Error;
using mod::ErrorCode;
using namespace mod::embed;

namespace {

// Character n-grams as a set, by plain substring enumeration over
// ASCII-lowercased text.
std::set<std::string> ngram_set(std::string s, int lo, int hi) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  std::set<std::string> out;
  for (int n = lo; n <= hi; ++n) {
    for (std::size_t i = 0; i + n <= s.size(); ++i) out.insert(s.substr(i, n));
  }
  return out;
}

double jaccard(const std::string& a, const std::string& b) {
  const auto A = ngram_set(a, 3, 5), B = ngram_set(b, 3, 5);
  std::size_t shared = 0;
  for (const auto& g : A) shared += B.count(g);
  return static_cast<double>(shared) / static_cast<double>(A.size() + B.size() - shared);
}

}  // namespace

TEST(HashGram, MatchesFrozenConstants) {
  // Frozen from an independent implementation of the documented hash.
  EXPECT_EQ(hash_gram("ham"), 0xdb683f5532741313ULL);
  EXPECT_EQ(hash_gram("ümlaut"), 0x5335342e6a0d5c77ULL);
  EXPECT_EQ(hash_gram(""), 0xa59c1f15b7b6e721ULL);
}

TEST(ReferenceEmbed, GoldenVectorForHamburg) {
  // 12 distinct n-grams land in 12 distinct buckets: entries are +-1/sqrt(12).
  const double e = 1.0 / std::sqrt(12.0);
  const std::vector<std::pair<std::size_t, double>> expected = {
      {11, e},   {12, e},   {19, -e},  {32, e},   {49, -e}, {79, -e},
      {108, -e}, {109, -e}, {120, -e}, {171, -e}, {175, e}, {232, -e}};
  const auto v = Embedder().embed("Hamburg");
  ASSERT_EQ(v.dimension(), 256u);
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < v.dimension(); ++i) nonzero += v[i] != 0.0;
  EXPECT_EQ(nonzero, expected.size());
  for (const auto& [idx, val] : expected) EXPECT_NEAR(v[idx], val, 1e-12) << "bucket " << idx;
}

TEST(ReferenceEmbed, Deterministic) {
  const Embedder embedder;
  const auto a = embedder.embed("Earthquake hits the city centre");
  const auto b = embedder.embed("Earthquake hits the city centre");
  EXPECT_EQ(a.raw(), b.raw());
}

TEST(ReferenceEmbed, UnitNorm) {
  EXPECT_NEAR(mod::l2_norm(Embedder().embed("Hamburg").values()), 1.0, 1e-9);
  EXPECT_NEAR(mod::l2_norm(Embedder().embed("a").values()), 1.0, 1e-9);
}

TEST(ReferenceEmbed, CaseInsensitive) {
  const Embedder embedder;
  EXPECT_EQ(embedder.embed("HAMBURG Flood").raw(), embedder.embed("hamburg flood").raw());
}

TEST(ReferenceEmbed, LexicalSimilarityFollowsNgramOverlap) {
  const std::string a = "earthquake hits city";
  const std::string b = "earthquake strikes city";
  const std::string c = "stock market rally";
  // The oracle ranks b closer to a than c is.
  ASSERT_GT(jaccard(a, b), jaccard(a, c));
  const Embedder embedder;
  const auto va = embedder.embed(a), vb = embedder.embed(b), vc = embedder.embed(c);
  EXPECT_GT(mod::cosine(va, vb), mod::cosine(va, vc));
}

TEST(ReferenceEmbed, DisjointNgramsAreOrthogonal) {
  const Embedder embedder;
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"abc", "xyz"}, {"aaaa", "bbbb"}, {"hello", "quartz"},
      {"flood", "storm"}, {"qwerty", "zxcvb"}, {"kiwi", "lemon"}};
  for (const auto& [a, b] : pairs) {
    const auto A = ngram_set(a, 3, 5), B = ngram_set(b, 3, 5);
    for (const auto& g : A) ASSERT_EQ(B.count(g), 0u) << a << " / " << b;
    EXPECT_NEAR(mod::cosine(embedder.embed(a), embedder.embed(b)), 0.0, 1e-9) << a << " / " << b;
  }
}

TEST(ReferenceEmbed, RandomTextsStayUnitNormWithBoundedCosine) {
  std::mt19937 rng(11);
  const std::string alphabet = "abcdefghij klmnop,.!";
  const Embedder embedder;
  std::vector<EmbeddingVector> vs;
  for (int i = 0; i < 60; ++i) {
    std::string s;
    const int len = std::uniform_int_distribution<int>(1, 40)(rng);
    for (int k = 0; k < len; ++k) {
      s += alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)];
    }
    vs.push_back(embedder.embed(s));
    for (double x : vs.back().values()) ASSERT_TRUE(std::isfinite(x));
    EXPECT_NEAR(mod::l2_norm(vs.back().values()), 1.0, 1e-9);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) {
      const double c = mod::cosine(vs[i], vs[j]);
      EXPECT_LE(c, 1.0 + 1e-9);
      EXPECT_GE(c, -1.0 - 1e-9);
    }
  }
}

TEST(ReferenceEmbed, EmptyTextRejected) {
  try {
    Embedder().embed("");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyText);
  }
  try {
    Embedder().embed_batch(std::vector<std::string>{"ok", ""});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyText);
    EXPECT_EQ(e.item_index(), 1u);
  }
}

TEST(EmbedderConfig, Validation) {
  EmbedderConfig cfg;
  cfg.dimension = 7;
  EXPECT_THROW(Embedder{cfg}, Error);
  cfg.dimension = 64;
  cfg.ngram_min = 4;
  cfg.ngram_max = 3;
  EXPECT_THROW(Embedder{cfg}, Error);
  cfg.ngram_min = 0;
  EXPECT_THROW(Embedder{cfg}, Error);
  cfg = {};
  cfg.backend = Backend::kRemote;
  EXPECT_THROW(Embedder{cfg}, Error);
}

TEST(EmbedBatch, EmptyAndSingleton) {
  const Embedder embedder;
  EXPECT_TRUE(embedder.embed_batch(std::vector<std::string>{}).empty());
  const auto one = embedder.embed_batch(std::vector<std::string>{"Flood in Hamburg"});
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], embedder.embed("Flood in Hamburg"));
}

TEST(EmbedBatch, FixtureCorpus) {
  auto articles = mod::ingest::read_fixture(std::filesystem::path(MOD_SOURCE_DIR) / "data" /
                                            "fixtures" / "capped_300.json");
  articles.resize(250);
  std::vector<mod::MentionText> texts;
  for (const auto& a : articles) texts.push_back(mod::normalize_title(a.title));
  const Embedder embedder;
  const auto vs = embedder.embed_batch(texts);
  ASSERT_EQ(vs.size(), 250u);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    EXPECT_NEAR(mod::l2_norm(vs[i].values()), 1.0, 1e-9);
    EXPECT_EQ(vs[i], embedder.embed(texts[i]));
    for (std::size_t j = 0; j < i; ++j) {
      if (texts[i] == texts[j]) {
        EXPECT_EQ(vs[i], vs[j]);
      } else {
        EXPECT_NE(vs[i], vs[j]) << i << " vs " << j;
      }
    }
  }
}

class RemoteEmbedTest : public ::testing::Test {
 protected:
  void SetUp() override {
    mock_.http().Post("/embed", [this](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      last_texts_ = body.at("texts").get<std::vector<std::string>>();
      nlohmann::json vectors = nlohmann::json::array();
      for (std::size_t i = 0; i < last_texts_.size(); ++i) {
        std::vector<double> v(dimension_, 0.0);
        v[i % dimension_] = 3.0;  // not unit length on purpose
        v[(i + 1) % dimension_] = 4.0;
        vectors.push_back(v);
      }
      res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
    });
    mock_.start();
  }

  EmbedderConfig remote_config(std::size_t dim) const {
    EmbedderConfig cfg;
    cfg.backend = Backend::kRemote;
    cfg.endpoint = mock_.url("/embed");
    cfg.dimension = dim;
    return cfg;
  }

  testing_support::MockServer mock_;
  std::size_t dimension_ = 16;
  std::vector<std::string> last_texts_;
};

TEST_F(RemoteEmbedTest, RenormalizesReceivedVectors) {
  const Embedder embedder(remote_config(16));
  const auto vs = embedder.embed_batch(std::vector<std::string>{"first", "second"});
  EXPECT_EQ(last_texts_, (std::vector<std::string>{"first", "second"}));
  ASSERT_EQ(vs.size(), 2u);
  EXPECT_NEAR(vs[0][0], 0.6, 1e-12);
  EXPECT_NEAR(vs[0][1], 0.8, 1e-12);
  EXPECT_NEAR(vs[1][1], 0.6, 1e-12);
  const auto single = embedder.embed("first");
  EXPECT_EQ(single, vs[0]);
}

TEST_F(RemoteEmbedTest, WrongLengthIsDimensionMismatch) {
  const Embedder embedder(remote_config(32));
  try {
    embedder.embed_batch(std::vector<std::string>{"a", "b"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    EXPECT_EQ(e.item_index(), 0u);
  }
}

TEST(RemoteEmbed, UnreachableIsRemoteUnavailable) {
  EmbedderConfig cfg;
  cfg.backend = Backend::kRemote;
  cfg.endpoint = "http://127.0.0.1:1/embed";
  cfg.timeout = std::chrono::milliseconds(2000);
  try {
    Embedder(cfg).embed("x");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kRemoteUnavailable);
  }
}
