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

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mod/error.hpp"
#include "mod/linking/entity.hpp"
#include "mod/tsv.hpp"

namespace mod::linking {

// Wikipedia title -> Wikidata QID.
class WikiMapping {
 public:
  WikiMapping() = default;

  explicit WikiMapping(std::unordered_map<std::string, std::string> entries)
      : entries_(std::move(entries)) {
    for (const auto& [title, qid] : entries_) {
      if (!is_valid_qid(qid)) {
        throw Error(ErrorCode::kFormatError, "invalid QID '" + qid + "' for '" + title + "'");
      }
    }
  }

  const std::string* find(std::string_view title) const {
    const auto it = entries_.find(std::string(title));
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::string> entries_;
};

// wikimap.tsv: wikipedia_title, qid
inline WikiMapping load_wikimap(const std::filesystem::path& path) {
  std::unordered_map<std::string, std::string> entries;
  for (auto& row : tsv::load(path, {"wikipedia_title", "qid"})) {
    entries.insert_or_assign(std::move(row[0]), std::move(row[1]));
  }
  return WikiMapping(std::move(entries));
}

inline std::string wikipedia_to_wikidata(std::string_view title, const WikiMapping& mapping) {
  if (const auto* qid = mapping.find(title)) return *qid;
  throw Error(ErrorCode::kNotFound, "no Wikidata item for '" + std::string(title) + "'");
}

struct Resolution {
  std::vector<LinkedEntity> linked;
  std::vector<EntityMention> unmapped;
};

// Attaches QIDs; mentions whose title is missing from the mapping are
// reported separately and never reach the graph.
inline Resolution resolve_qids(const std::vector<EntityMention>& mentions,
                               const WikiMapping& mapping) {
  Resolution r;
  for (const auto& m : mentions) {
    if (const auto* qid = mapping.find(m.wikipedia_title)) {
      r.linked.push_back({m.surface, m.wikipedia_title, *qid, m.role});
    } else {
      r.unmapped.push_back(m);
    }
  }
  return r;
}

}  // namespace mod::linking
