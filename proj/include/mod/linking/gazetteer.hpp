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

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mod/error.hpp"
#include "mod/linking/entity.hpp"
#include "mod/text.hpp"
#include "mod/tsv.hpp"

namespace mod::linking {

struct GazetteerEntry {
  std::vector<std::string> surface_forms;
  std::string wikipedia_title;
  Role role;
};

// Surface-form lookup table used as the deterministic reference linker.
class Gazetteer {
 public:
  Gazetteer() = default;

  explicit Gazetteer(std::vector<GazetteerEntry> entries) : entries_(std::move(entries)) {
    folded_.reserve(entries_.size());
    for (const auto& e : entries_) {
      if (e.surface_forms.empty()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "gazetteer entry '" + e.wikipedia_title + "' has no surface form");
      }
      std::vector<std::u32string> forms;
      for (const auto& s : e.surface_forms) {
        if (text::trim(s).empty()) {
          throw Error(ErrorCode::kInvalidArgument,
                      "gazetteer entry '" + e.wikipedia_title + "' has an empty surface form");
        }
        forms.push_back(text::fold_case(text::decode_utf8(text::trim(s))));
      }
      folded_.push_back(std::move(forms));
    }
  }

  const std::vector<GazetteerEntry>& entries() const noexcept { return entries_; }
  const std::vector<std::vector<std::u32string>>& folded_forms() const noexcept { return folded_; }

  std::optional<Role> role_of(std::string_view wikipedia_title) const {
    for (const auto& e : entries_) {
      if (e.wikipedia_title == wikipedia_title) return e.role;
    }
    return std::nullopt;
  }

 private:
  std::vector<GazetteerEntry> entries_;
  std::vector<std::vector<std::u32string>> folded_;
};

// gazetteer.tsv: surface_form, wikipedia_title, role; one row per surface
// form. Rows sharing a title are merged into one entry.
inline Gazetteer load_gazetteer(const std::filesystem::path& path) {
  std::vector<GazetteerEntry> entries;
  std::map<std::string, std::size_t> by_title;
  for (const auto& row : tsv::load(path, {"surface_form", "wikipedia_title", "role"})) {
    const Role role = role_from_label(row[2]);
    auto [it, inserted] = by_title.emplace(row[1], entries.size());
    if (inserted) {
      entries.push_back({{row[0]}, row[1], role});
    } else {
      auto& e = entries[it->second];
      if (e.role != role) {
        throw Error(ErrorCode::kFormatError, "conflicting roles for '" + row[1] + "'");
      }
      e.surface_forms.push_back(row[0]);
    }
  }
  return Gazetteer(std::move(entries));
}

// Case-insensitive whole-word matching. Overlaps resolve longest first, then
// leftmost; each entry yields at most one match. Output is in text order.
inline std::vector<EntityMention> link_entities(std::string_view mention,
                                                const Gazetteer& gazetteer) {
  std::vector<std::size_t> offsets;
  const auto folded = text::fold_case(text::decode_utf8(mention, &offsets));

  struct Candidate {
    std::size_t start, length, entry;
  };
  std::vector<Candidate> candidates;
  const auto& forms = gazetteer.folded_forms();
  for (std::size_t e = 0; e < forms.size(); ++e) {
    for (const auto& form : forms[e]) {
      for (auto pos = folded.find(form); pos != std::u32string::npos;
           pos = folded.find(form, pos + 1)) {
        const auto end = pos + form.size();
        const bool left_ok =
            pos == 0 || !(text::is_word_char(folded[pos - 1]) && text::is_word_char(form.front()));
        const bool right_ok = end == folded.size() ||
                              !(text::is_word_char(folded[end]) && text::is_word_char(form.back()));
        if (left_ok && right_ok) candidates.push_back({pos, form.size(), e});
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.length != b.length) return a.length > b.length;
    if (a.start != b.start) return a.start < b.start;
    return a.entry < b.entry;
  });

  std::vector<Candidate> accepted;
  std::vector<bool> used(forms.size(), false);
  for (const auto& c : candidates) {
    if (used[c.entry]) continue;
    const bool overlaps = std::any_of(accepted.begin(), accepted.end(), [&](const Candidate& a) {
      return c.start < a.start + a.length && a.start < c.start + c.length;
    });
    if (overlaps) continue;
    used[c.entry] = true;
    accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Candidate& a, const Candidate& b) { return a.start < b.start; });

  std::vector<EntityMention> out;
  out.reserve(accepted.size());
  for (const auto& c : accepted) {
    const auto b = offsets[c.start];
    const auto e = offsets[c.start + c.length];
    const auto& entry = gazetteer.entries()[c.entry];
    out.push_back({std::string(mention.substr(b, e - b)), entry.wikipedia_title, entry.role, b});
  }
  return out;
}

}  // namespace mod::linking
