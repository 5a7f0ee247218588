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

#include <cstddef>
#include <deque>
#include <span>
#include <tuple>
#include <vector>

#include "mod/error.hpp"
#include "mod/viz/pca.hpp"

namespace mod::viz {

inline constexpr int kNoise = -1;

// Which cluster a border point joins when core points of several clusters
// are within eps of it.
enum class BorderPolicy {
  // The cluster of its closest core point (ties: lexicographically smallest
  // core coordinates). Independent of input order.
  kNearestCore,
  // The first cluster to reach it while scanning in input order, as in the
  // original sequential algorithm.
  kFirstReached,
};

struct DbscanParams {
  double eps = 0.35;
  std::size_t min_pts = 3;
  BorderPolicy border = BorderPolicy::kNearestCore;
};

inline void validate(const DbscanParams& p) {
  if (!(p.eps > 0.0)) throw Error(ErrorCode::kInvalidArgument, "eps must be positive");
  if (p.min_pts < 1) throw Error(ErrorCode::kInvalidArgument, "min_pts must be >= 1");
}

// Euclidean DBSCAN. A point is core when at least min_pts points (itself
// included) lie within eps. Cluster ids are assigned 0, 1, 2, ... in the
// order their first core point appears in the input; kNoise marks points
// reachable from no core point.
inline std::vector<int> dbscan(std::span<const Point2> points, const DbscanParams& params) {
  validate(params);
  const std::size_t n = points.size();
  const double eps2 = params.eps * params.eps;
  const auto dist2 = [&](std::size_t a, std::size_t b) {
    const double dx = points[a].x - points[b].x;
    const double dy = points[a].y - points[b].y;
    return dx * dx + dy * dy;
  };

  std::vector<std::vector<std::size_t>> neighbors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist2(i, j) <= eps2) neighbors[i].push_back(j);
    }
  }
  std::vector<bool> core(n);
  for (std::size_t i = 0; i < n; ++i) core[i] = neighbors[i].size() >= params.min_pts;

  std::vector<int> labels(n, kNoise);
  int next_id = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (!core[seed] || labels[seed] != kNoise) continue;
    const int id = next_id++;
    labels[seed] = id;
    std::deque<std::size_t> frontier{seed};
    while (!frontier.empty()) {
      const auto p = frontier.front();
      frontier.pop_front();
      for (auto q : neighbors[p]) {
        if (labels[q] != kNoise) continue;
        if (core[q]) {
          labels[q] = id;
          frontier.push_back(q);
        } else if (params.border == BorderPolicy::kFirstReached) {
          labels[q] = id;
        }
      }
    }
  }

  if (params.border == BorderPolicy::kNearestCore) {
    for (std::size_t i = 0; i < n; ++i) {
      if (core[i]) continue;
      std::size_t best = n;
      for (auto q : neighbors[i]) {
        if (!core[q]) continue;
        if (best == n) {
          best = q;
          continue;
        }
        const auto key = [&](std::size_t c) {
          return std::make_tuple(dist2(i, c), points[c].x, points[c].y);
        };
        if (key(q) < key(best)) best = q;
      }
      if (best != n) labels[i] = labels[best];
    }
  }
  return labels;
}

}  // namespace mod::viz
