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

// Two-component PCA by power iteration with deflation.
//
// The covariance (divisor n - 1) is never materialized; C v is evaluated as
// X^T (X v) / (n - 1) on the centered data X, which costs O(n D) per step.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mod/embed/vector.hpp"
#include "mod/error.hpp"

namespace mod::viz {

struct PcaOptions {
  // Stop when 1 - |cos(v_k, v_{k+1})| < tolerance.
  double tolerance = 1e-10;
  int max_iterations = 10000;
};

struct PcaModel {
  std::vector<double> mean;
  std::array<std::vector<double>, 2> components;  // orthonormal
  std::array<double, 2> eigenvalues{};            // descending, >= 0

  std::size_t dimension() const noexcept { return mean.size(); }
};

inline std::span<const double> as_span(const std::vector<double>& v) { return v; }
inline std::span<const double> as_span(const EmbeddingVector& v) { return v.values(); }

namespace detail {

class CenteredData {
 public:
  template <class Rows>
  explicit CenteredData(const Rows& rows) {
    n_ = rows.size();
    dim_ = as_span(rows[0]).size();
    mean_.assign(dim_, 0.0);
    for (const auto& r : rows) {
      const auto s = as_span(r);
      if (s.size() != dim_) throw Error(ErrorCode::kDimensionMismatch, "rows differ in dimension");
      for (std::size_t k = 0; k < dim_; ++k) mean_[k] += s[k];
    }
    for (double& m : mean_) m /= static_cast<double>(n_);
    data_.resize(n_ * dim_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto s = as_span(rows[i]);
      for (std::size_t k = 0; k < dim_; ++k) data_[i * dim_ + k] = s[k] - mean_[k];
    }
  }

  std::size_t rows() const noexcept { return n_; }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<double>& mean() const noexcept { return mean_; }
  std::span<const double> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

  // C v
  std::vector<double> covariance_times(std::span<const double> v) const {
    std::vector<double> out(dim_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto r = row(i);
      const double w = dot(r, v);
      for (std::size_t k = 0; k < dim_; ++k) out[k] += w * r[k];
    }
    const double scale = 1.0 / static_cast<double>(n_ - 1);
    for (double& x : out) x *= scale;
    return out;
  }

  double trace() const {
    double t = 0.0;
    for (double x : data_) t += x * x;
    return t / static_cast<double>(n_ - 1);
  }

 private:
  std::size_t n_ = 0, dim_ = 0;
  std::vector<double> mean_;
  std::vector<double> data_;
};

inline void orthogonalize(std::vector<double>& v, std::span<const std::vector<double>> basis) {
  for (const auto& b : basis) {
    const double p = dot(v, b);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] -= p * b[k];
  }
}

inline bool normalize(std::vector<double>& v) {
  const double n = l2_norm(v);
  if (!(n > 0.0)) return false;
  for (double& x : v) x /= n;
  return true;
}

// Largest-magnitude coordinate positive; the lowest index wins ties.
inline void fix_sign(std::vector<double>& v) {
  std::size_t arg = 0;
  for (std::size_t k = 1; k < v.size(); ++k) {
    if (std::abs(v[k]) > std::abs(v[arg])) arg = k;
  }
  if (v[arg] < 0.0) {
    for (double& x : v) x = -x;
  }
}

// Start vector for component `found.size()`: the centered row with the most
// energy outside the span of the components found so far, or failing that a
// standard basis vector.
inline std::vector<double> start_vector(const CenteredData& data,
                                        std::span<const std::vector<double>> found) {
  std::vector<double> best;
  double best_norm = 0.0;
  for (std::size_t i = 0; i < data.rows(); ++i) {
    std::vector<double> r(data.row(i).begin(), data.row(i).end());
    orthogonalize(r, found);
    const double n = l2_norm(r);
    if (n > best_norm) {
      best_norm = n;
      best = std::move(r);
    }
  }
  if (best_norm > 0.0) {
    normalize(best);
    return best;
  }
  for (std::size_t k = 0; k < data.dim(); ++k) {
    std::vector<double> e(data.dim(), 0.0);
    e[k] = 1.0;
    orthogonalize(e, found);
    if (l2_norm(e) > 0.5) {
      normalize(e);
      return e;
    }
  }
  throw Error(ErrorCode::kDegenerateInput, "no direction left for another component");
}

}  // namespace detail

template <class Rows>
PcaModel fit_pca(const Rows& rows, const PcaOptions& opts = {}) {
  if (rows.size() < 2) throw Error(ErrorCode::kDegenerateInput, "PCA needs at least two vectors");
  const detail::CenteredData data(rows);
  if (data.dim() < 2) throw Error(ErrorCode::kDegenerateInput, "PCA needs dimension >= 2");

  bool distinct = false;
  for (std::size_t i = 1; i < rows.size() && !distinct; ++i) {
    const auto a = as_span(rows[0]);
    const auto b = as_span(rows[i]);
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (a[k] != b[k]) {
        distinct = true;
        break;
      }
    }
  }
  if (!distinct) throw Error(ErrorCode::kDegenerateInput, "all vectors are identical");

  // Deflated spectra below this are treated as exactly zero.
  const double zero_floor = 1e-13 * data.trace();

  PcaModel model;
  model.mean = data.mean();
  std::vector<std::vector<double>> found;
  std::array<double, 2> lambdas{};
  for (std::size_t c = 0; c < 2; ++c) {
    auto v = detail::start_vector(data, found);
    bool converged = false;
    for (int it = 0; it < opts.max_iterations; ++it) {
      auto w = data.covariance_times(v);
      for (std::size_t j = 0; j < found.size(); ++j) {
        const double p = dot(found[j], v);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= lambdas[j] * p * found[j][k];
      }
      detail::orthogonalize(w, found);
      if (l2_norm(w) <= zero_floor) {
        // Remaining spectrum is null; any orthonormal completion is exact.
        converged = true;
        break;
      }
      detail::normalize(w);
      const double cos = std::abs(dot(w, v));
      v = std::move(w);
      if (1.0 - cos < opts.tolerance) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw Error(ErrorCode::kNoConvergence,
                  "power iteration did not converge for component " + std::to_string(c));
    }
    detail::orthogonalize(v, found);
    detail::normalize(v);
    detail::fix_sign(v);
    const auto cv = data.covariance_times(v);
    lambdas[c] = std::max(0.0, dot(v, cv));
    found.push_back(std::move(v));
  }
  if (lambdas[1] > lambdas[0]) {
    std::swap(lambdas[0], lambdas[1]);
    std::swap(found[0], found[1]);
  }
  model.components = {std::move(found[0]), std::move(found[1])};
  model.eigenvalues = lambdas;
  return model;
}

struct Point2 {
  double x = 0.0, y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 project(const PcaModel& model, std::span<const double> v) {
  if (v.size() != model.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "vector dimension does not match the PCA model");
  }
  Point2 p;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double centered = v[k] - model.mean[k];
    p.x += centered * model.components[0][k];
    p.y += centered * model.components[1][k];
  }
  return p;
}

inline Point2 project(const PcaModel& model, const EmbeddingVector& v) {
  return project(model, v.values());
}

}  // namespace mod::viz
