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

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mod/viz/dbscan.hpp"
#include "support/dbscan_oracle.hpp"

using mod::Error;
using namespace mod::viz;

namespace {

std::vector<Point2> to_points(const std::vector<oracle::Pt>& pts) {
  std::vector<Point2> out;
  for (const auto& p : pts) out.push_back({p.x, p.y});
  return out;
}

std::vector<oracle::Pt> blob(double cx, double cy, int count, double spacing) {
  std::vector<oracle::Pt> out;
  for (int i = 0; i < count; ++i) out.push_back({cx + spacing * i, cy});
  return out;
}

}  // namespace

TEST(Dbscan, EmptyInput) {
  EXPECT_TRUE(dbscan(std::vector<Point2>{}, {}).empty());
}

TEST(Dbscan, IdenticalPointsFormOneCluster) {
  const std::vector<Point2> pts(4, Point2{0.5, -0.5});
  EXPECT_EQ(dbscan(pts, {0.35, 3}), (std::vector<int>{0, 0, 0, 0}));
}

TEST(Dbscan, MinPtsAboveSizeIsAllNoise) {
  const std::vector<Point2> pts = {{0, 0}, {0.1, 0}, {0.2, 0}};
  EXPECT_EQ(dbscan(pts, {0.35, 4}), (std::vector<int>{kNoise, kNoise, kNoise}));
}

TEST(Dbscan, TwoBlobsAndIsolatedPoint) {
  auto pts = blob(0, 0, 5, 0.1);
  const auto b = blob(10, 0, 5, 0.1);
  pts.insert(pts.end(), b.begin(), b.end());
  pts.push_back({5, 5});
  const auto labels = dbscan(to_points(pts), {0.35, 3});
  EXPECT_EQ(labels, (std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1, 1, kNoise}));
  std::set<std::size_t> noise;
  const auto clusters = oracle::dbscan_partition(pts, 0.35, 3, &noise);
  EXPECT_EQ(oracle::canonical(labels), oracle::canonical(clusters, noise));
}

TEST(Dbscan, MinPtsOneMakesEveryPointCore) {
  const std::vector<Point2> pts = {{0, 0}, {5, 5}, {0.1, 0}};
  EXPECT_EQ(dbscan(pts, {0.35, 1}), (std::vector<int>{0, 1, 0}));
}

TEST(Dbscan, RejectsBadParams) {
  const std::vector<Point2> pts = {{0, 0}};
  EXPECT_THROW(dbscan(pts, {0.0, 3}), Error);
  EXPECT_THROW(dbscan(pts, {-1.0, 3}), Error);
  EXPECT_THROW(dbscan(pts, {0.3, 0}), Error);
}

TEST(Dbscan, MatchesTransitiveClosureOracle) {
  std::mt19937_64 rng(2023);
  for (int trial = 0; trial < 300; ++trial) {
    const auto inst = oracle::random_instance(rng);
    std::set<std::size_t> noise;
    const auto clusters = oracle::dbscan_partition(inst.pts, inst.eps, inst.min_pts, &noise);
    const auto labels = dbscan(to_points(inst.pts), {inst.eps, inst.min_pts});
    ASSERT_EQ(oracle::canonical(labels), oracle::canonical(clusters, noise)) << "trial " << trial;
  }
}

TEST(Dbscan, ClusterIdsFollowDiscoveryOrder) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const auto labels = dbscan(to_points(inst.pts), {inst.eps, inst.min_pts});
    // Ids are ordered by each cluster's first core point in the input.
    int next = 0;
    for (std::size_t i = 0; i < inst.pts.size(); ++i) {
      std::size_t count = 0;
      for (const auto& q : inst.pts) {
        const double dx = q.x - inst.pts[i].x, dy = q.y - inst.pts[i].y;
        count += dx * dx + dy * dy <= inst.eps * inst.eps;
      }
      if (count < inst.min_pts) continue;
      ASSERT_LE(labels[i], next);
      if (labels[i] == next) ++next;
    }
  }
}

TEST(Dbscan, PermutationInvariant) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const auto base = oracle::canonical(dbscan(to_points(inst.pts), {inst.eps, inst.min_pts}));
    std::vector<std::size_t> perm(inst.pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (int s = 0; s < 20; ++s) {
      std::shuffle(perm.begin(), perm.end(), rng);
      std::vector<Point2> shuffled;
      for (auto i : perm) shuffled.push_back({inst.pts[i].x, inst.pts[i].y});
      const auto got = dbscan(shuffled, {inst.eps, inst.min_pts});
      std::vector<int> back(got.size());
      for (std::size_t k = 0; k < perm.size(); ++k) back[perm[k]] = got[k];
      ASSERT_EQ(oracle::canonical(back), base) << "trial " << trial << " shuffle " << s;
    }
  }
}

TEST(Dbscan, ClusterCountIsEmergent) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g(0.0, 0.05);
  for (int k = 1; k <= 5; ++k) {
    std::vector<Point2> pts;
    for (int b = 0; b < k; ++b) {
      for (int i = 0; i < 8; ++i) pts.push_back({b * 3.0 + g(rng), (b % 2) * 2.0 + g(rng)});
    }
    std::shuffle(pts.begin(), pts.end(), rng);
    const auto labels = dbscan(pts, {0.35, 3});
    EXPECT_EQ(*std::max_element(labels.begin(), labels.end()) + 1, k);
    EXPECT_EQ(std::count(labels.begin(), labels.end(), kNoise), 0);
  }
}

TEST(Dbscan, FirstReachedPolicyTakesScanOrder) {
  // Point 4 is a border point between two clusters. The cluster seeded at
  // x=0 is scanned first and claims it, although the core at x=0.58 is closer.
  const std::vector<Point2> pts = {{0.0, 0},  {-0.05, 0}, {-0.1, 0}, {-0.15, 0}, {0.3, 0},
                                   {0.58, 0}, {0.63, 0},  {0.68, 0}, {0.73, 0}};
  const auto a = dbscan(pts, {0.3, 4, BorderPolicy::kFirstReached});
  const auto b = dbscan(pts, {0.3, 4, BorderPolicy::kNearestCore});
  EXPECT_EQ(a, (std::vector<int>{0, 0, 0, 0, 0, 1, 1, 1, 1}));
  EXPECT_EQ(b, (std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1, 1}));
}

TEST(Dbscan, PoliciesAgreeOnCorePoints) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto inst = oracle::random_instance(rng);
    const auto pts = to_points(inst.pts);
    const auto a = dbscan(pts, {inst.eps, inst.min_pts, BorderPolicy::kFirstReached});
    const auto b = dbscan(pts, {inst.eps, inst.min_pts, BorderPolicy::kNearestCore});
    for (std::size_t i = 0; i < pts.size(); ++i) ASSERT_EQ(a[i] == kNoise, b[i] == kNoise);
  }
}
