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

#include <array>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mod/error.hpp"
#include "mod/linking/entity.hpp"
#include "mod/time.hpp"
#include "mod/tsv.hpp"
#include "mod/typing/event_type.hpp"
#include "mod/typing/prototypes.hpp"

namespace mod::graph {

inline constexpr std::string_view kWikidataEntityPrefix = "http://www.wikidata.org/entity/";
inline constexpr std::string_view kRdfsComment = "http://www.w3.org/2000/01/rdf-schema#comment";

// Namespaces used when minting and serializing graphs.
struct Vocabulary {
  std::string event_namespace = "https://data.CoyPu.org/event/mod/";
  std::string ontology_namespace = "https://schema.CoyPu.org/global#";

  std::string event_class() const { return ontology_namespace + "Event"; }
  std::string has_locality() const { return ontology_namespace + "hasLocality"; }
  std::string has_impact_on() const { return ontology_namespace + "hasImpactOn"; }
  std::string has_publisher() const { return ontology_namespace + "hasPublisher"; }
  std::string has_timestamp() const { return ontology_namespace + "hasTimestamp"; }
};

struct EventGraph {
  std::string id;
  std::string event_class_iri;
  std::optional<std::string> wikidata_type_iri;  // absent for oos
  std::string comment;
  std::vector<std::string> localities;  // Wikidata entity IRIs
  std::vector<std::string> impacted;    // Wikidata entity IRIs
  std::string publisher;
  std::string timestamp;  // DD_MM_YYYY_HH_MM_SS

  friend bool operator==(const EventGraph&, const EventGraph&) = default;
};

inline std::string wikidata_iri(std::string_view qid) {
  return std::string(kWikidataEntityPrefix) + std::string(qid);
}

// DD_MM_YYYY_HH_MM_SS, UTC, zero padded.
inline std::string format_timestamp(Instant t) {
  const auto c = to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%02d_%02d_%04d_%02d_%02d_%02d", c.day, c.month, c.year, c.hour,
                c.minute, c.second);
  return buf;
}

inline std::optional<Instant> parse_timestamp(std::string_view s) {
  if (s.size() != 19) return std::nullopt;
  for (std::size_t i : {2u, 5u, 10u, 13u, 16u}) {
    if (s[i] != '_') return std::nullopt;
  }
  CivilTime c{};
  if (!mod::detail::parse_digits(s, 0, 2, c.day) || !mod::detail::parse_digits(s, 3, 2, c.month) ||
      !mod::detail::parse_digits(s, 6, 4, c.year) || !mod::detail::parse_digits(s, 11, 2, c.hour) ||
      !mod::detail::parse_digits(s, 14, 2, c.minute) || !mod::detail::parse_digits(s, 17, 2, c.second)) {
    return std::nullopt;
  }
  return from_civil(c);
}

// Shape check only: ^\d{2}_\d{2}_\d{4}_\d{2}_\d{2}_\d{2}$
constexpr bool is_timestamp_shaped(std::string_view s) {
  if (s.size() != 19) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const bool sep = i == 2 || i == 5 || i == 10 || i == 13 || i == 16;
    if (sep ? s[i] != '_' : (s[i] < '0' || s[i] > '9')) return false;
  }
  return true;
}

// Random (version 4) UUID in canonical lowercase form.
inline std::string uuid_v4() {
  thread_local std::mt19937_64 rng = [] {
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd(), rd(), rd(), rd(), rd()};
    return std::mt19937_64(seq);
  }();
  std::array<std::uint8_t, 16> b{};
  for (std::size_t i = 0; i < 16; i += 8) {
    const auto r = rng();
    for (std::size_t k = 0; k < 8; ++k) b[i + k] = static_cast<std::uint8_t>(r >> (8 * k));
  }
  b[6] = static_cast<std::uint8_t>((b[6] & 0x0F) | 0x40);
  b[8] = static_cast<std::uint8_t>((b[8] & 0x3F) | 0x80);
  char buf[40];
  std::snprintf(buf, sizeof buf,
                "%02x%02x%02x%02x-%02x%02x-%02x%02x-%02x%02x-%02x%02x%02x%02x%02x%02x", b[0], b[1],
                b[2], b[3], b[4], b[5], b[6], b[7], b[8], b[9], b[10], b[11], b[12], b[13], b[14],
                b[15]);
  return buf;
}

// Event type -> Wikidata class, total over the nine disaster types.
class TypeQidTable {
 public:
  explicit TypeQidTable(std::map<EventType, std::string> entries) : entries_(std::move(entries)) {
    for (auto t : kDisasterTypes) {
      const auto it = entries_.find(t);
      if (it == entries_.end()) {
        throw Error(ErrorCode::kFormatError,
                    "type table lacks an entry for " + std::string(to_string(t)));
      }
      if (!linking::is_valid_qid(it->second)) {
        throw Error(ErrorCode::kFormatError, "invalid QID '" + it->second + "'");
      }
    }
    if (entries_.contains(EventType::kOos)) {
      throw Error(ErrorCode::kFormatError, "oos cannot map to a Wikidata type");
    }
  }

  const std::map<EventType, std::string>& entries() const noexcept { return entries_; }

 private:
  std::map<EventType, std::string> entries_;
};

// type_qids.tsv: event_type, qid, provenance
inline TypeQidTable load_type_qids(const std::filesystem::path& path) {
  std::map<EventType, std::string> entries;
  for (const auto& row : tsv::load(path, {"event_type", "qid", "provenance"})) {
    entries.insert_or_assign(event_type_from_label(row[0]), row[1]);
  }
  return TypeQidTable(std::move(entries));
}

inline std::string event_type_to_qid(EventType t, const TypeQidTable& table) {
  if (t == EventType::kOos) {
    throw Error(ErrorCode::kOosHasNoType, "out-of-scope mentions have no event type QID");
  }
  return table.entries().at(t);
}

inline EventGraph build_event_graph(const typing::TypedMention& mention,
                                    const std::vector<linking::LinkedEntity>& entities,
                                    std::string_view publisher, Instant instant,
                                    const TypeQidTable& table, const Vocabulary& vocab = {}) {
  EventGraph g;
  g.id = vocab.event_namespace + uuid_v4();
  g.event_class_iri = vocab.event_class();
  if (mention.event_type != EventType::kOos) {
    g.wikidata_type_iri = wikidata_iri(event_type_to_qid(mention.event_type, table));
  }
  g.comment = mention.mention.str();
  for (const auto& e : entities) {
    if (!linking::is_valid_qid(e.qid)) {
      throw Error(ErrorCode::kInvalidArgument, "entity '" + e.surface + "' has invalid QID");
    }
    auto& target = e.role == linking::Role::kLocality ? g.localities : g.impacted;
    target.push_back(wikidata_iri(e.qid));
  }
  g.publisher = std::string(publisher);
  g.timestamp = format_timestamp(instant);
  return g;
}

// The UUID part of an id minted by build_event_graph.
inline std::string uuid_of(const EventGraph& g) {
  const auto slash = g.id.find_last_of("/#");
  return slash == std::string::npos ? g.id : g.id.substr(slash + 1);
}

}  // namespace mod::graph
