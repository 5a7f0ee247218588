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

#include <string>
#include <vector>

#include <json.hpp>

#include "mod/typing/prototypes.hpp"
#include "mod/viz/dbscan.hpp"
#include "mod/viz/pca.hpp"

namespace mod::viz {

struct VizPoint {
  double x = 0.0, y = 0.0;
  std::string title;
  EventType event_type = EventType::kOos;
  double confidence = 0.0;
  int cluster_id = kNoise;
};

// The classification and clustering scatter views share one PCA projection;
// they differ only in which label a consumer colors by.
struct Views {
  PcaModel model;
  std::vector<VizPoint> classification;
  std::vector<VizPoint> clustering;
};

inline Views build_views(const std::vector<typing::TypedMention>& mentions,
                         const DbscanParams& params, const PcaOptions& pca_opts = {}) {
  validate(params);
  std::vector<EmbeddingVector> vectors;
  vectors.reserve(mentions.size());
  for (const auto& m : mentions) vectors.push_back(m.vector);

  Views views;
  views.model = fit_pca(vectors, pca_opts);
  std::vector<Point2> coords;
  coords.reserve(vectors.size());
  for (const auto& v : vectors) coords.push_back(project(views.model, v));
  const auto clusters = dbscan(coords, params);

  for (std::size_t i = 0; i < mentions.size(); ++i) {
    VizPoint p{coords[i].x, coords[i].y, mentions[i].mention.str(), mentions[i].event_type,
               mentions[i].confidence, clusters[i]};
    views.classification.push_back(p);
    views.clustering.push_back(std::move(p));
  }
  return views;
}

inline nlohmann::json to_json(const VizPoint& p) {
  return {{"x", p.x},
          {"y", p.y},
          {"title", p.title},
          {"event_type", std::string(to_string(p.event_type))},
          {"confidence", p.confidence},
          {"cluster_id", p.cluster_id}};
}

inline nlohmann::json to_json(const std::vector<VizPoint>& points) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& p : points) arr.push_back(to_json(p));
  return arr;
}

inline VizPoint viz_point_from_json(const nlohmann::json& j) {
  try {
    return {j.at("x").get<double>(),
            j.at("y").get<double>(),
            j.at("title").get<std::string>(),
            event_type_from_label(j.at("event_type").get<std::string>()),
            j.value("confidence", 0.0),
            j.at("cluster_id").get<int>()};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("bad view point: ") + e.what());
  }
}

}  // namespace mod::viz
