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

#include <compare>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "mod/error.hpp"
#include "mod/text.hpp"

namespace mod {

// A normalized headline used as the textual representation of one event
// mention. Only normalize_title() constructs one, so every instance is
// trimmed, has no double spaces and is non-empty.
class MentionText {
 public:
  const std::string& str() const noexcept { return text_; }
  operator std::string_view() const noexcept { return text_; }

  friend bool operator==(const MentionText&, const MentionText&) = default;
  friend auto operator<=>(const MentionText&, const MentionText&) = default;

 private:
  explicit MentionText(std::string text) : text_(std::move(text)) {}
  friend MentionText normalize_title(std::string_view raw);

  std::string text_;
};

namespace ingest::detail {

constexpr bool drops_space_before(char32_t cp) {
  switch (cp) {
    case U',': case U'.': case U'!': case U'?': case U';': case U':':
    case U'\'': case U'”': case U')':
      return true;
    default:
      return false;
  }
}

constexpr bool drops_space_after(char32_t cp) { return cp == U'(' || cp == U'“'; }

}  // namespace ingest::detail

// Collapses whitespace, removes spaces before closing punctuation and after
// opening brackets/quotes, then trims. Idempotent.
inline MentionText normalize_title(std::string_view raw) {
  const auto cps = text::decode_utf8(raw);

  std::u32string collapsed;
  collapsed.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (text::is_space(cp)) {
      pending_space = !collapsed.empty();
      continue;
    }
    if (pending_space) collapsed.push_back(U' ');
    pending_space = false;
    collapsed.push_back(cp);
  }

  std::u32string out;
  out.reserve(collapsed.size());
  for (std::size_t i = 0; i < collapsed.size(); ++i) {
    const char32_t cp = collapsed[i];
    if (cp == U' ') {
      const bool after_opener = !out.empty() && ingest::detail::drops_space_after(out.back());
      const bool before_closer =
          i + 1 < collapsed.size() && ingest::detail::drops_space_before(collapsed[i + 1]);
      if (after_opener || before_closer) continue;
    }
    out.push_back(cp);
  }

  if (out.empty()) throw Error(ErrorCode::kEmptyTitle, "title is empty after normalization");
  return MentionText(text::encode_utf8(out));
}

namespace ingest {

// Exact-string deduplication keeping the first occurrence.
inline std::vector<MentionText> dedupe_mentions(const std::vector<MentionText>& mentions) {
  std::unordered_set<std::string_view> seen;
  std::vector<MentionText> out;
  out.reserve(mentions.size());
  for (const auto& m : mentions) {
    if (seen.insert(m.str()).second) out.push_back(m);
  }
  return out;
}

}  // namespace ingest
}  // namespace mod
