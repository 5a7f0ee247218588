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

#pragma once

#include <filesystem>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mod/embed/embedder.hpp"
#include "mod/embed/vector.hpp"
#include "mod/error.hpp"
#include "mod/ingest/normalize.hpp"
#include "mod/tsv.hpp"
#include "mod/typing/event_type.hpp"

namespace mod::typing {

inline constexpr double kDefaultOosThreshold = 0.5;

struct LabeledExample {
  MentionText text;
  EventType label;
};

// Class centroids in embedding space. Immutable once built; safe to share
// between threads.
class PrototypeSet {
 public:
  PrototypeSet(std::map<EventType, EmbeddingVector> prototypes, double oos_threshold)
      : prototypes_(std::move(prototypes)), oos_threshold_(oos_threshold) {
    if (prototypes_.empty()) throw Error(ErrorCode::kNoExamples, "prototype set is empty");
    if (prototypes_.contains(EventType::kOos)) {
      throw Error(ErrorCode::kOosInTraining, "oos cannot have a prototype");
    }
    if (!(oos_threshold_ > 0.0 && oos_threshold_ < 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "oos threshold must lie in (0, 1)");
    }
    const auto dim = prototypes_.begin()->second.dimension();
    for (const auto& [t, v] : prototypes_) {
      if (v.dimension() != dim) {
        throw Error(ErrorCode::kDimensionMismatch, "prototypes differ in dimension");
      }
    }
  }

  const std::map<EventType, EmbeddingVector>& prototypes() const noexcept { return prototypes_; }
  double oos_threshold() const noexcept { return oos_threshold_; }
  std::size_t dimension() const noexcept { return prototypes_.begin()->second.dimension(); }

  PrototypeSet with_threshold(double threshold) const { return {prototypes_, threshold}; }

 private:
  std::map<EventType, EmbeddingVector> prototypes_;
  double oos_threshold_;
};

// Centroid of each class = L2-normalized mean of its example embeddings.
inline PrototypeSet fit_prototypes(const std::vector<LabeledExample>& examples,
                                   const embed::Embedder& embedder,
                                   double oos_threshold = kDefaultOosThreshold) {
  if (examples.empty()) throw Error(ErrorCode::kNoExamples, "no training examples");
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].label == EventType::kOos) {
      throw Error(ErrorCode::kOosInTraining, "example " + std::to_string(i) + " is labeled oos", i);
    }
  }
  std::vector<MentionText> texts;
  texts.reserve(examples.size());
  for (const auto& e : examples) texts.push_back(e.text);
  const auto vectors = embedder.embed_batch(texts);

  std::map<EventType, std::vector<double>> sums;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto& sum = sums[examples[i].label];
    if (sum.empty()) sum.assign(vectors[i].dimension(), 0.0);
    for (std::size_t k = 0; k < sum.size(); ++k) sum[k] += vectors[i][k];
  }
  std::map<EventType, EmbeddingVector> centroids;
  for (auto& [label, sum] : sums) {
    // Dividing by the count does not change the normalized direction.
    centroids.emplace(label, EmbeddingVector::normalized(std::move(sum)));
  }
  return PrototypeSet(std::move(centroids), oos_threshold);
}

struct Prediction {
  EventType event_type;
  double confidence;  // max cosine over all prototypes
};

inline Prediction classify(const EmbeddingVector& v, const PrototypeSet& protos) {
  if (v.dimension() != protos.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "query and prototypes differ in dimension");
  }
  auto best_type = EventType::kOos;
  double best = -std::numeric_limits<double>::infinity();
  // std::map iterates in enum order; strict '>' keeps the earliest on ties.
  for (const auto& [t, proto] : protos.prototypes()) {
    const double c = cosine(v, proto);
    if (c > best) {
      best = c;
      best_type = t;
    }
  }
  if (best < protos.oos_threshold()) return {EventType::kOos, best};
  return {best_type, best};
}

struct TypedMention {
  MentionText mention;
  EmbeddingVector vector;
  EventType event_type;
  double confidence;
};

inline TypedMention type_mention(MentionText text, EmbeddingVector vector,
                                 const PrototypeSet& protos) {
  const auto p = classify(vector, protos);
  return {std::move(text), std::move(vector), p.event_type, p.confidence};
}

// Seed file: TSV with columns label, headline.
inline std::vector<LabeledExample> load_seed_examples(const std::filesystem::path& path) {
  std::vector<LabeledExample> out;
  for (const auto& row : tsv::load(path, {"label", "headline"})) {
    out.push_back({normalize_title(row[1]), event_type_from_label(row[0])});
  }
  return out;
}

inline nlohmann::json to_json(const PrototypeSet& protos) {
  nlohmann::json j;
  j["oos_threshold"] = protos.oos_threshold();
  j["prototypes"] = nlohmann::json::object();
  for (const auto& [t, v] : protos.prototypes()) {
    j["prototypes"][std::string(to_string(t))] = v.raw();
  }
  return j;
}

inline PrototypeSet prototypes_from_json(const nlohmann::json& j) {
  try {
    std::map<EventType, EmbeddingVector> protos;
    for (const auto& [label, arr] : j.at("prototypes").items()) {
      protos.emplace(event_type_from_label(label),
                     EmbeddingVector::normalized(arr.get<std::vector<double>>()));
    }
    return PrototypeSet(std::move(protos), j.at("oos_threshold").get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad prototype JSON: ") + e.what());
  }
}

}  // namespace mod::typing
