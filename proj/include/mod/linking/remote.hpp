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

// Client for an external neural entity linker.
//
//   POST {"text": string}
//   <- {"entities": [{"span": string, "wikipedia_title": string, "score": number}]}

#pragma once

#include <chrono>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mod/error.hpp"
#include "mod/http_client.hpp"
#include "mod/linking/entity.hpp"
#include "mod/linking/gazetteer.hpp"

namespace mod::linking {

struct RemoteLinkerOptions {
  std::string endpoint;
  double score_floor = 0.0;
  std::chrono::milliseconds timeout{10000};
};

struct Candidate {
  std::string span;
  std::string wikipedia_title;
  double score;
};

inline std::vector<Candidate> parse_candidates(const nlohmann::json& reply) {
  if (!reply.is_object() || !reply.contains("entities") || !reply["entities"].is_array()) {
    throw Error(ErrorCode::kFormatError, "linker reply lacks an 'entities' array");
  }
  std::vector<Candidate> out;
  for (const auto& e : reply["entities"]) {
    if (!e.is_object() || !e.contains("span") || !e["span"].is_string() ||
        !e.contains("wikipedia_title") || !e["wikipedia_title"].is_string() ||
        !e.contains("score") || !e["score"].is_number()) {
      throw Error(ErrorCode::kFormatError, "malformed linker candidate: " + e.dump());
    }
    out.push_back({e["span"].get<std::string>(), e["wikipedia_title"].get<std::string>(),
                   e["score"].get<double>()});
  }
  return out;
}

// Keeps the best candidate per span at or above the score floor, in order of
// each span's first appearance. Roles come from the gazetteer when it knows
// the title; anything else is treated as impacted.
inline std::vector<EntityMention> select_candidates(std::string_view text,
                                                    const std::vector<Candidate>& candidates,
                                                    double score_floor,
                                                    const Gazetteer& gazetteer) {
  std::vector<std::string> order;
  std::map<std::string, Candidate> best;
  for (const auto& c : candidates) {
    if (c.score < score_floor) continue;
    auto [it, inserted] = best.emplace(c.span, c);
    if (inserted) {
      order.push_back(c.span);
    } else if (c.score > it->second.score) {
      it->second = c;
    }
  }
  std::vector<EntityMention> out;
  for (const auto& span : order) {
    const auto& c = best.at(span);
    const auto role = gazetteer.role_of(c.wikipedia_title).value_or(Role::kImpacted);
    const auto pos = text.find(span);
    out.push_back({c.span, c.wikipedia_title, role,
                   pos == std::string_view::npos ? text.size() : pos});
  }
  return out;
}

inline std::vector<EntityMention> resolve_remote(std::string_view text,
                                                 const RemoteLinkerOptions& opts,
                                                 const Gazetteer& gazetteer) {
  if (opts.endpoint.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "remote linker needs an endpoint");
  }
  http::CallOptions call;
  call.timeout = opts.timeout;
  call.transport_error = ErrorCode::kRemoteUnavailable;
  const auto reply = http::post_json(opts.endpoint, {{"text", std::string(text)}}, call);
  return select_candidates(text, parse_candidates(reply), opts.score_floor, gazetteer);
}

}  // namespace mod::linking
