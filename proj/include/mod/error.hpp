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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mod {

enum class ErrorCode {
  kInvalidArgument,
  kNetworkError,
  kFormatError,
  kFixtureNotFound,
  kEmptyTitle,
  kEmptyText,
  kDimensionMismatch,
  kRemoteUnavailable,
  kNoExamples,
  kOosInTraining,
  kNotFound,
  kOosHasNoType,
  kDegenerateInput,
  kNoConvergence,
  kIoError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kNetworkError: return "network_error";
    case ErrorCode::kFormatError: return "format_error";
    case ErrorCode::kFixtureNotFound: return "fixture_not_found";
    case ErrorCode::kEmptyTitle: return "empty_title";
    case ErrorCode::kEmptyText: return "empty_text";
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kRemoteUnavailable: return "remote_unavailable";
    case ErrorCode::kNoExamples: return "no_examples";
    case ErrorCode::kOosInTraining: return "oos_in_training";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kOosHasNoType: return "oos_has_no_type";
    case ErrorCode::kDegenerateInput: return "degenerate_input";
    case ErrorCode::kNoConvergence: return "no_convergence";
    case ErrorCode::kIoError: return "io_error";
  }
  return "unknown";
}

// All library failures are reported through this type. `item_index` is set
// when the failure belongs to one element of a batch.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> item_index = std::nullopt)
      : std::runtime_error(message), code_(code), item_index_(item_index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> item_index() const noexcept { return item_index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> item_index_;
};

}  // namespace mod
