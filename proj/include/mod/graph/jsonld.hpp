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

// Expanded-form JSON-LD for event graphs. Keys are emitted in a fixed order:
// @id, @type, rdfs:comment, hasImpactOn, hasLocality, hasPublisher,
// hasTimestamp. Empty entity lists are omitted.

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mod/error.hpp"
#include "mod/graph/event_graph.hpp"

namespace mod::graph {

inline nlohmann::ordered_json to_jsonld(const EventGraph& g, const Vocabulary& vocab = {}) {
  using oj = nlohmann::ordered_json;
  const auto ids = [](const std::vector<std::string>& iris) {
    oj arr = oj::array();
    for (const auto& iri : iris) arr.push_back(oj{{"@id", iri}});
    return arr;
  };
  const auto value = [](const std::string& v) { return oj::array({oj{{"@value", v}}}); };

  oj doc;
  doc["@id"] = g.id;
  oj types = oj::array({g.event_class_iri});
  if (g.wikidata_type_iri) types.push_back(*g.wikidata_type_iri);
  doc["@type"] = std::move(types);
  doc[std::string(kRdfsComment)] = value(g.comment);
  if (!g.impacted.empty()) doc[vocab.has_impact_on()] = ids(g.impacted);
  if (!g.localities.empty()) doc[vocab.has_locality()] = ids(g.localities);
  doc[vocab.has_publisher()] = value(g.publisher);
  doc[vocab.has_timestamp()] = value(g.timestamp);
  return doc;
}

inline std::string serialize_jsonld(const EventGraph& g, const Vocabulary& vocab = {}) {
  return to_jsonld(g, vocab).dump(2);
}

namespace detail {

template <class Json>
std::string single_value(const Json& doc, const std::string& key) {
  const auto& arr = doc.at(key);
  if (!arr.is_array() || arr.size() != 1) {
    throw Error(ErrorCode::kFormatError, "'" + key + "' must hold exactly one value");
  }
  return arr[0].at("@value").template get<std::string>();
}

template <class Json>
std::vector<std::string> id_list(const Json& doc, const std::string& key) {
  std::vector<std::string> out;
  if (!doc.contains(key)) return out;
  for (const auto& node : doc.at(key)) {
    auto iri = node.at("@id").template get<std::string>();
    if (!iri.starts_with(kWikidataEntityPrefix) ||
        !linking::is_valid_qid(std::string_view(iri).substr(kWikidataEntityPrefix.size()))) {
      throw Error(ErrorCode::kFormatError, "'" + iri + "' is not a Wikidata entity IRI");
    }
    out.push_back(std::move(iri));
  }
  return out;
}

}  // namespace detail

// Inverse of to_jsonld. Validates the invariants the graph builder
// guarantees, so anything that parses is a well-formed EventGraph.
template <class Json>
EventGraph from_jsonld(const Json& doc, const Vocabulary& vocab = {}) {
  try {
    EventGraph g;
    g.id = doc.at("@id").template get<std::string>();
    const auto& types = doc.at("@type");
    if (!types.is_array() || types.empty() || types.size() > 2) {
      throw Error(ErrorCode::kFormatError, "'@type' must list one or two IRIs");
    }
    g.event_class_iri = types[0].template get<std::string>();
    if (types.size() == 2) g.wikidata_type_iri = types[1].template get<std::string>();
    g.comment = detail::single_value(doc, std::string(kRdfsComment));
    g.impacted = detail::id_list(doc, vocab.has_impact_on());
    g.localities = detail::id_list(doc, vocab.has_locality());
    g.publisher = detail::single_value(doc, vocab.has_publisher());
    g.timestamp = detail::single_value(doc, vocab.has_timestamp());
    if (g.id.empty() || g.comment.empty()) {
      throw Error(ErrorCode::kFormatError, "event graph needs a non-empty id and comment");
    }
    if (!is_timestamp_shaped(g.timestamp)) {
      throw Error(ErrorCode::kFormatError, "bad timestamp '" + g.timestamp + "'");
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("malformed event graph: ") + e.what());
  }
}

inline EventGraph parse_jsonld(std::string_view text, const Vocabulary& vocab = {}) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, std::string("event graph is not JSON: ") + e.what());
  }
  return from_jsonld(doc, vocab);
}

}  // namespace mod::graph
