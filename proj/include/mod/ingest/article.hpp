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
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mod/error.hpp"
#include "mod/text.hpp"
#include "mod/time.hpp"
#include "mod/tsv.hpp"

namespace mod::ingest {

// Upper bound on articles returned by one document-API query.
inline constexpr std::size_t kMaxRecordsCap = 250;

struct Article {
  std::string url;
  std::string title;
  std::string language;
  Instant seen_at{};
  std::string source_domain;

  friend bool operator==(const Article&, const Article&) = default;
};

// Article-list record schema: {url, title, language, seendate, domain}.
inline nlohmann::json to_json(const Article& a) {
  return nlohmann::json{{"url", a.url},
                        {"title", a.title},
                        {"language", a.language},
                        {"seendate", format_compact_timestamp(a.seen_at)},
                        {"domain", a.source_domain}};
}

inline Article article_from_json(const nlohmann::json& j, std::size_t index) {
  const auto field = [&](const char* key) -> std::string {
    if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
      throw Error(ErrorCode::kFormatError,
                  "article " + std::to_string(index) + ": missing string field '" + key + "'",
                  index);
    }
    return j[key].get<std::string>();
  };
  Article a;
  a.url = field("url");
  a.title = field("title");
  a.language = field("language");
  a.source_domain = field("domain");
  const auto seen = field("seendate");
  const auto parsed = parse_compact_timestamp(seen);
  if (!parsed) {
    throw Error(ErrorCode::kFormatError,
                "article " + std::to_string(index) + ": bad seendate '" + seen + "'", index);
  }
  a.seen_at = *parsed;
  if (a.url.empty() || a.title.empty()) {
    throw Error(ErrorCode::kFormatError,
                "article " + std::to_string(index) + ": empty url or title", index);
  }
  return a;
}

// Accepts either a bare array of records or an object wrapping them under
// "articles" (the live API shape). An empty object means no results.
inline std::vector<Article> parse_article_list(std::string_view body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError, std::string("article list is not JSON: ") + e.what());
  }
  const nlohmann::json* records = &doc;
  if (doc.is_object()) {
    if (!doc.contains("articles")) {
      if (doc.empty()) return {};
      throw Error(ErrorCode::kFormatError, "article list object lacks 'articles'");
    }
    records = &doc["articles"];
  }
  if (!records->is_array()) throw Error(ErrorCode::kFormatError, "article list is not an array");
  std::vector<Article> out;
  out.reserve(records->size());
  for (std::size_t i = 0; i < records->size(); ++i) {
    out.push_back(article_from_json((*records)[i], i));
  }
  return out;
}

inline std::vector<Article> read_fixture(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) {
    throw Error(ErrorCode::kFixtureNotFound, "fixture not found: " + path.string());
  }
  return parse_article_list(tsv::read_file(path));
}

inline void write_fixture(const std::filesystem::path& path, const std::vector<Article>& articles) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : articles) arr.push_back(to_json(a));
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write fixture " + path.string());
  out << arr.dump(2) << '\n';
}

inline bool is_english_label(std::string_view language) {
  return text::iequals_ascii(language, "english") || text::iequals_ascii(language, "eng");
}

inline std::vector<Article> filter_english(const std::vector<Article>& articles) {
  std::vector<Article> out;
  for (const auto& a : articles) {
    if (is_english_label(a.language)) out.push_back(a);
  }
  return out;
}

}  // namespace mod::ingest
