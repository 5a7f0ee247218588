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
#include <string>
#include <string_view>

#include "mod/error.hpp"

namespace mod::linking {

// Relation an entity plays in the event: hasLocality or hasImpactOn.
enum class Role { kLocality, kImpacted };

constexpr std::string_view to_string(Role r) {
  return r == Role::kLocality ? "locality" : "impacted";
}

inline Role role_from_label(std::string_view label) {
  if (label == "locality") return Role::kLocality;
  if (label == "impacted") return Role::kImpacted;
  throw Error(ErrorCode::kFormatError, "unknown role '" + std::string(label) + "'");
}

// Matches Q[1-9][0-9]*.
constexpr bool is_valid_qid(std::string_view qid) {
  if (qid.size() < 2 || qid[0] != 'Q' || qid[1] < '1' || qid[1] > '9') return false;
  for (std::size_t i = 2; i < qid.size(); ++i) {
    if (qid[i] < '0' || qid[i] > '9') return false;
  }
  return true;
}

// A span resolved to a Wikipedia title, before Wikidata mapping.
struct EntityMention {
  std::string surface;
  std::string wikipedia_title;
  Role role;
  std::size_t offset = 0;  // byte offset of `surface` in the mention text

  friend bool operator==(const EntityMention&, const EntityMention&) = default;
};

struct LinkedEntity {
  std::string surface;
  std::string wikipedia_title;
  std::string qid;
  Role role;

  friend bool operator==(const LinkedEntity&, const LinkedEntity&) = default;
};

}  // namespace mod::linking
