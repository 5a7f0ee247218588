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

// Sentence embeddings for event mentions.
//
// The reference backend is signed feature hashing over character n-grams:
//
//   1. fold the text to lower case (code-point level),
//   2. take every window of n code points for n in [ngram_min, ngram_max]
//      (texts shorter than ngram_min contribute the whole text as one gram),
//   3. hash the UTF-8 bytes of each gram with 64-bit FNV-1a started from
//      offset_basis XOR kHashSeed, then apply the splitmix64 finalizer,
//   4. add sign(bit 63) to bucket (hash mod dimension),
//   5. L2-normalize.
//
// The hash constants below are part of the output format; changing them
// changes every vector and every golden file.
//
// The remote backend POSTs {"texts": [...]} and expects {"vectors": [[...]]}.

#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mod/embed/vector.hpp"
#include "mod/error.hpp"
#include "mod/http_client.hpp"
#include "mod/text.hpp"

namespace mod::embed {

inline constexpr std::uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
inline constexpr std::uint64_t kFnvPrime = 0x00000100000001b3ULL;
inline constexpr std::uint64_t kHashSeed = 0x4d6f442d32303233ULL;  // "MoD-2023"

enum class Backend { kReference, kRemote };

struct EmbedderConfig {
  Backend backend = Backend::kReference;
  std::string endpoint;  // remote only
  std::size_t dimension = 256;
  int ngram_min = 3;
  int ngram_max = 5;
  std::chrono::milliseconds timeout{10000};
};

inline void validate(const EmbedderConfig& cfg) {
  if (cfg.dimension < 8) throw Error(ErrorCode::kInvalidArgument, "embedding dimension must be >= 8");
  if (cfg.ngram_min < 1 || cfg.ngram_min > cfg.ngram_max) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram range must satisfy 1 <= min <= max");
  }
  if (cfg.backend == Backend::kRemote && cfg.endpoint.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "remote embedder needs an endpoint");
  }
}

constexpr std::uint64_t splitmix64_finalize(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t hash_gram(std::string_view bytes, std::uint64_t seed = kHashSeed) {
  std::uint64_t h = kFnvOffsetBasis ^ seed;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= kFnvPrime;
  }
  return splitmix64_finalize(h);
}

// The character n-grams the reference backend hashes, in extraction order.
inline std::vector<std::string> char_ngrams(std::string_view text, int ngram_min, int ngram_max) {
  const auto cps = text::fold_case(text::decode_utf8(text));
  std::vector<std::string> grams;
  if (cps.empty()) return grams;
  if (cps.size() < static_cast<std::size_t>(ngram_min)) {
    grams.push_back(text::encode_utf8(cps));
    return grams;
  }
  for (int n = ngram_min; n <= ngram_max; ++n) {
    const auto len = static_cast<std::size_t>(n);
    if (len > cps.size()) break;
    for (std::size_t i = 0; i + len <= cps.size(); ++i) {
      grams.push_back(text::encode_utf8(std::u32string_view(cps).substr(i, len)));
    }
  }
  return grams;
}

inline EmbeddingVector reference_embed(std::string_view text, const EmbedderConfig& cfg) {
  if (text.empty()) throw Error(ErrorCode::kEmptyText, "cannot embed empty text");
  std::vector<double> acc(cfg.dimension, 0.0);
  for (const auto& gram : char_ngrams(text, cfg.ngram_min, cfg.ngram_max)) {
    const auto h = hash_gram(gram);
    acc[h % cfg.dimension] += (h >> 63) ? -1.0 : 1.0;
  }
  if (l2_norm(acc) == 0.0) {
    // Every gram cancelled against another of opposite sign; fall back to
    // the unsigned histogram so the output stays well-defined.
    for (const auto& gram : char_ngrams(text, cfg.ngram_min, cfg.ngram_max)) {
      acc[hash_gram(gram) % cfg.dimension] += 1.0;
    }
  }
  return EmbeddingVector::normalized(std::move(acc));
}

inline std::vector<EmbeddingVector> remote_embed_batch(std::span<const std::string_view> texts,
                                                       const EmbedderConfig& cfg) {
  if (texts.empty()) return {};
  nlohmann::json body{{"texts", nlohmann::json::array()}};
  for (auto t : texts) body["texts"].push_back(std::string(t));

  http::CallOptions opts;
  opts.timeout = cfg.timeout;
  opts.transport_error = ErrorCode::kRemoteUnavailable;
  const auto reply = http::post_json(cfg.endpoint, body, opts);

  if (!reply.is_object() || !reply.contains("vectors") || !reply["vectors"].is_array()) {
    throw Error(ErrorCode::kFormatError, "embedding reply lacks a 'vectors' array");
  }
  const auto& vectors = reply["vectors"];
  if (vectors.size() != texts.size()) {
    throw Error(ErrorCode::kFormatError, "embedding reply has " + std::to_string(vectors.size()) +
                                             " vectors for " + std::to_string(texts.size()) +
                                             " texts");
  }
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    const auto& v = vectors[i];
    if (!v.is_array()) throw Error(ErrorCode::kFormatError, "vector is not an array", i);
    if (v.size() != cfg.dimension) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "remote vector " + std::to_string(i) + " has length " +
                      std::to_string(v.size()) + ", expected " + std::to_string(cfg.dimension),
                  i);
    }
    std::vector<double> values;
    values.reserve(v.size());
    for (const auto& x : v) {
      if (!x.is_number()) throw Error(ErrorCode::kFormatError, "non-numeric vector entry", i);
      values.push_back(x.get<double>());
    }
    try {
      out.push_back(EmbeddingVector::normalized(std::move(values)));
    } catch (const Error& e) {
      throw Error(e.code(), e.what(), i);
    }
  }
  return out;
}

// Dispatches to the configured backend. Immutable after construction.
class Embedder {
 public:
  explicit Embedder(EmbedderConfig cfg = {}) : cfg_(std::move(cfg)) { validate(cfg_); }

  const EmbedderConfig& config() const noexcept { return cfg_; }

  EmbeddingVector embed(std::string_view text) const {
    if (text.empty()) throw Error(ErrorCode::kEmptyText, "cannot embed empty text");
    if (cfg_.backend == Backend::kReference) return reference_embed(text, cfg_);
    const std::string_view one[] = {text};
    return std::move(remote_embed_batch(one, cfg_).front());
  }

  template <class Range>
  std::vector<EmbeddingVector> embed_batch(const Range& texts) const {
    std::vector<std::string_view> views;
    for (const auto& t : texts) views.emplace_back(std::string_view(t));
    for (std::size_t i = 0; i < views.size(); ++i) {
      if (views[i].empty()) {
        throw Error(ErrorCode::kEmptyText, "text " + std::to_string(i) + " is empty", i);
      }
    }
    if (cfg_.backend == Backend::kRemote) return remote_embed_batch(views, cfg_);
    std::vector<EmbeddingVector> out;
    out.reserve(views.size());
    for (auto v : views) out.push_back(reference_embed(v, cfg_));
    return out;
  }

 private:
  EmbedderConfig cfg_;
};

}  // namespace mod::embed
