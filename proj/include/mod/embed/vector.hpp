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

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mod/error.hpp"

namespace mod {

inline double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "dot product of vectors with different lengths");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

// Unit-length embedding. Construction normalizes and rejects zero or
// non-finite input, so every instance satisfies |v| = 1.
class EmbeddingVector {
 public:
  EmbeddingVector() = default;

  static EmbeddingVector normalized(std::vector<double> values) {
    for (double x : values) {
      if (!std::isfinite(x)) throw Error(ErrorCode::kFormatError, "non-finite embedding entry");
    }
    const double norm = l2_norm(values);
    if (!(norm > 0.0)) throw Error(ErrorCode::kFormatError, "zero embedding vector");
    for (double& x : values) x /= norm;
    EmbeddingVector v;
    v.values_ = std::move(values);
    return v;
  }

  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& raw() const noexcept { return values_; }
  std::size_t dimension() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  friend bool operator==(const EmbeddingVector&, const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

// Both arguments are unit-norm, so cosine similarity is the dot product.
inline double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  return dot(a.values(), b.values());
}

}  // namespace mod
