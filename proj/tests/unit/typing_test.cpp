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
#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mod/embed/embedder.hpp"
#include "mod/ingest/normalize.hpp"
#include "mod/typing/prototypes.hpp"

using mod::EmbeddingVector;
using mod::Error;
using mod::ErrorCode;
using mod::normalize_title;
using mod::EventType;
using mod::kAllEventTypes;
using mod::kDisasterTypes;
using namespace mod::typing;

namespace {

const std::filesystem::path kData = std::filesystem::path(MOD_SOURCE_DIR) / "data";

EmbeddingVector unit(std::size_t dim, std::size_t axis) {
  std::vector<double> v(dim, 0.0);
  v[axis] = 1.0;
  return EmbeddingVector::normalized(std::move(v));
}

EmbeddingVector random_unit(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<double> v(dim);
  for (auto& x : v) x = g(rng);
  return EmbeddingVector::normalized(std::move(v));
}

// Compensated mean of each coordinate, then L2 normalization.
std::vector<double> kahan_centroid(const std::vector<EmbeddingVector>& vs) {
  const std::size_t dim = vs.front().dimension();
  std::vector<double> out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    double sum = 0.0, comp = 0.0;
    for (const auto& v : vs) {
      const double y = v[k] - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    out[k] = sum / static_cast<double>(vs.size());
  }
  double norm = 0.0;
  for (double x : out) norm += x * x;
  norm = std::sqrt(norm);
  for (auto& x : out) x /= norm;
  return out;
}

}  // namespace

TEST(EventTypeLabels, RoundTrip) {
  for (auto t : kAllEventTypes) EXPECT_EQ(mod::event_type_from_label(mod::to_string(t)), t);
  EXPECT_EQ(mod::to_string(EventType::kTropicalStorm), "tropical_storm");
  EXPECT_EQ(mod::to_string(EventType::kOos), "oos");
  EXPECT_FALSE(mod::parse_event_type("tsunami").has_value());
  EXPECT_THROW(mod::event_type_from_label("tsunami"), Error);
}

TEST(FitPrototypes, SingleExampleEqualsItsEmbedding) {
  const mod::embed::Embedder embedder;
  const auto text = normalize_title("Gunman opens fire at church");
  const auto protos = fit_prototypes({{text, EventType::kShooting}}, embedder);
  ASSERT_EQ(protos.prototypes().size(), 1u);
  const auto& p = protos.prototypes().at(EventType::kShooting);
  const auto v = embedder.embed(text);
  for (std::size_t k = 0; k < v.dimension(); ++k) EXPECT_NEAR(p[k], v[k], 1e-12);
}

TEST(FitPrototypes, TwoIdenticalExamplesEqualOne) {
  const mod::embed::Embedder embedder;
  const auto text = normalize_title("River bursts its banks");
  const auto one = fit_prototypes({{text, EventType::kFlood}}, embedder);
  const auto two = fit_prototypes({{text, EventType::kFlood}, {text, EventType::kFlood}}, embedder);
  const auto& a = one.prototypes().at(EventType::kFlood);
  const auto& b = two.prototypes().at(EventType::kFlood);
  for (std::size_t k = 0; k < a.dimension(); ++k) EXPECT_NEAR(a[k], b[k], 1e-12);
}

TEST(FitPrototypes, CentroidsMatchCompensatedMean) {
  const mod::embed::Embedder embedder;
  const std::vector<std::pair<const char*, EventType>> raw = {
      {"Gunman kills three in school shooting", EventType::kShooting},
      {"Police hunt shooter after mall attack", EventType::kShooting},
      {"Several dead in shooting at church", EventType::kShooting},
      {"Man opens fire on crowd outside bar", EventType::kShooting},
      {"Shots fired at concert, two injured", EventType::kShooting},
      {"Floodwaters swamp villages after heavy rain", EventType::kFlood},
      {"River overflows and floods town centre", EventType::kFlood},
      {"Flash floods strand thousands", EventType::kFlood},
      {"Storm surge floods coastal city", EventType::kFlood},
      {"Residents evacuated as flood waters rise", EventType::kFlood},
  };
  std::vector<LabeledExample> examples;
  std::map<EventType, std::vector<EmbeddingVector>> by_class;
  for (const auto& [t, label] : raw) {
    examples.push_back({normalize_title(t), label});
    by_class[label].push_back(embedder.embed(t));
  }
  const auto protos = fit_prototypes(examples, embedder);
  ASSERT_EQ(protos.prototypes().size(), 2u);
  for (const auto& [label, vs] : by_class) {
    const auto expected = kahan_centroid(vs);
    const auto& got = protos.prototypes().at(label);
    for (std::size_t k = 0; k < expected.size(); ++k) EXPECT_NEAR(got[k], expected[k], 1e-12);
  }
}

TEST(FitPrototypes, Errors) {
  const mod::embed::Embedder embedder;
  try {
    fit_prototypes({}, embedder);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoExamples);
  }
  try {
    fit_prototypes({{normalize_title("a flood"), EventType::kFlood},
                    {normalize_title("nothing"), EventType::kOos}},
                   embedder);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOosInTraining);
    EXPECT_EQ(e.item_index(), 1u);
  }
}

TEST(PrototypeSet, RejectsBadConstruction) {
  EXPECT_THROW(PrototypeSet({}, 0.5), Error);
  EXPECT_THROW(PrototypeSet({{EventType::kOos, unit(8, 0)}}, 0.5), Error);
  EXPECT_THROW(PrototypeSet({{EventType::kFire, unit(8, 0)}}, 0.0), Error);
  EXPECT_THROW(PrototypeSet({{EventType::kFire, unit(8, 0)}}, 1.0), Error);
  EXPECT_THROW(PrototypeSet({{EventType::kFire, unit(8, 0)}, {EventType::kFlood, unit(9, 0)}}, 0.5),
               Error);
}

TEST(Classify, SelfMatchHasConfidenceOne) {
  const mod::embed::Embedder embedder;
  const auto text = normalize_title("Gunman opens fire at church");
  const auto protos = fit_prototypes({{text, EventType::kShooting}}, embedder);
  const auto p = classify(embedder.embed(text), protos);
  EXPECT_EQ(p.event_type, EventType::kShooting);
  EXPECT_NEAR(p.confidence, 1.0, 1e-12);
}

TEST(Classify, BelowThresholdIsOos) {
  const PrototypeSet protos({{EventType::kFire, unit(8, 0)}, {EventType::kFlood, unit(8, 1)}}, 0.5);
  const auto p = classify(unit(8, 5), protos);
  EXPECT_EQ(p.event_type, EventType::kOos);
  EXPECT_NEAR(p.confidence, 0.0, 1e-12);
}

TEST(Classify, DimensionMismatch) {
  const PrototypeSet protos({{EventType::kFire, unit(8, 0)}}, 0.5);
  try {
    classify(unit(9, 0), protos);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
  }
}

TEST(Classify, AgreesWithBruteForceArgmax) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> thr(0.01, 0.6);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 4 + trial % 13;
    std::map<EventType, EmbeddingVector> m;
    for (auto t : kDisasterTypes) {
      if (rng() % 3 != 0 || m.empty()) m.emplace(t, random_unit(rng, dim));
    }
    const PrototypeSet protos(m, thr(rng));
    const auto q = random_unit(rng, dim);

    EventType best_t = EventType::kOos;
    double best = -2.0;
    for (auto t : kDisasterTypes) {
      auto it = m.find(t);
      if (it == m.end()) continue;
      double c = 0.0;
      for (std::size_t k = 0; k < dim; ++k) c += q[k] * it->second[k];
      if (c > best) {
        best = c;
        best_t = t;
      }
    }
    if (best < protos.oos_threshold()) best_t = EventType::kOos;

    const auto p = classify(q, protos);
    EXPECT_EQ(p.event_type, best_t) << "trial " << trial;
    EXPECT_NEAR(p.confidence, best, 1e-12);
    if (p.event_type != EventType::kOos) {
      EXPECT_GE(p.confidence, protos.oos_threshold());
    }
  }
}

TEST(Classify, RaisingThresholdOnlyAddsOos) {
  std::mt19937_64 rng(7);
  std::map<EventType, EmbeddingVector> m;
  for (auto t : kDisasterTypes) m.emplace(t, random_unit(rng, 12));
  const PrototypeSet base(m, 0.05);
  for (int i = 0; i < 200; ++i) {
    const auto q = random_unit(rng, 12);
    const auto lo = classify(q, base);
    for (double t : {0.1, 0.2, 0.4, 0.6, 0.9}) {
      const auto hi = classify(q, base.with_threshold(t));
      if (lo.event_type == EventType::kOos) {
        EXPECT_EQ(hi.event_type, EventType::kOos);
      }
      if (hi.event_type != EventType::kOos) {
        EXPECT_EQ(hi.event_type, lo.event_type);
      }
    }
  }
}

TEST(Classify, TiesGoToEarlierType) {
  std::vector<double> diag(8, 0.0);
  diag[0] = diag[1] = 1.0;
  const PrototypeSet protos({{EventType::kExplosion, unit(8, 0)}, {EventType::kFlood, unit(8, 1)}},
                            0.1);
  const auto p = classify(EmbeddingVector::normalized(diag), protos);
  EXPECT_EQ(p.event_type, EventType::kFlood);
}

TEST(Classify, SeparatedSyntheticClusters) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, 0.05);
  const std::size_t dim = 32;
  std::map<EventType, EmbeddingVector> m;
  for (std::size_t i = 0; i < kDisasterTypes.size(); ++i) m.emplace(kDisasterTypes[i], unit(dim, i));
  const PrototypeSet protos(m, 0.5);
  int correct = 0, total = 0;
  for (std::size_t i = 0; i < kDisasterTypes.size(); ++i) {
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> v(dim);
      for (auto& x : v) x = noise(rng);
      v[i] += 1.0;
      correct += classify(EmbeddingVector::normalized(v), protos).event_type == kDisasterTypes[i];
      ++total;
    }
  }
  EXPECT_EQ(correct, total);
}

TEST(SeedExamples, BundledFileCoversEveryType) {
  const auto examples = load_seed_examples(kData / "seed_examples.tsv");
  std::map<EventType, int> counts;
  for (const auto& e : examples) ++counts[e.label];
  for (auto t : kDisasterTypes) EXPECT_GE(counts[t], 5) << mod::to_string(t);
  EXPECT_EQ(counts.count(EventType::kOos), 0u);
}

TEST(SeedExamples, LeaveOneOutAccuracy) {
  // Regression guard on the bundled seeds with the reference embedder.
  const mod::embed::Embedder embedder;
  const auto examples = load_seed_examples(kData / "seed_examples.tsv");
  int correct = 0;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto rest = examples;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
    const auto protos = fit_prototypes(rest, embedder, 0.01);
    correct += classify(embedder.embed(examples[i].text), protos).event_type == examples[i].label;
  }
  EXPECT_GE(static_cast<double>(correct) / static_cast<double>(examples.size()), 0.85);
}

TEST(PrototypeJson, RoundTrip) {
  const mod::embed::Embedder embedder;
  const auto protos =
      fit_prototypes(load_seed_examples(kData / "seed_examples.tsv"), embedder, 0.2);
  const auto back = prototypes_from_json(nlohmann::json::parse(to_json(protos).dump()));
  EXPECT_DOUBLE_EQ(back.oos_threshold(), 0.2);
  ASSERT_EQ(back.prototypes().size(), protos.prototypes().size());
  for (const auto& [t, v] : protos.prototypes()) {
    const auto& w = back.prototypes().at(t);
    for (std::size_t k = 0; k < v.dimension(); ++k) EXPECT_NEAR(w[k], v[k], 1e-15);
  }
  EXPECT_THROW(prototypes_from_json(nlohmann::json{{"prototypes", 3}}), Error);
}

TEST(Classify, ChurchShootingHeadlineAtServiceThreshold) {
  const mod::embed::Embedder embedder;
  const auto protos = fit_prototypes(load_seed_examples(kData / "seed_examples.tsv"), embedder, 0.2);
  const auto p = classify(
      embedder.embed(normalize_title(
          "Hamburg shooting : Multiple dead after attack at Jehovah Witness church in Germany")),
      protos);
  EXPECT_EQ(p.event_type, EventType::kShooting);
}
