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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "mod/error.hpp"
#include "mod/http_client.hpp"
#include "mod/ingest/article.hpp"
#include "mod/text.hpp"
#include "mod/time.hpp"

namespace mod::ingest {

enum class SourceKind { kLive, kFixture };

struct ArticleQuery {
  std::string keyword;
  Date date{};
  std::size_t max_records = kMaxRecordsCap;
  SourceKind source = SourceKind::kLive;
  std::filesystem::path fixture_path;  // used when source == kFixture
};

inline void validate(const ArticleQuery& q) {
  if (text::trim(q.keyword).empty()) {
    throw Error(ErrorCode::kInvalidArgument, "keyword must be non-empty");
  }
  if (!q.date.ok()) throw Error(ErrorCode::kInvalidArgument, "invalid query date");
  if (q.max_records == 0 || q.max_records > kMaxRecordsCap) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_records must be in [1, " + std::to_string(kMaxRecordsCap) + "]");
  }
  if (q.source == SourceKind::kFixture && q.fixture_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fixture source needs a fixture path");
  }
}

// Wire profile of a document API that answers keyword queries with an article
// list. The defaults describe the GDELT DOC 2.0 endpoint.
struct LiveProfile {
  std::string base_url = "https://api.gdeltproject.org/api/v2/doc/doc";
  std::string keyword_param = "query";
  std::string max_records_param = "maxrecords";
  std::string start_param = "startdatetime";
  std::string end_param = "enddatetime";
  std::vector<std::pair<std::string, std::string>> fixed_params = {{"mode", "artlist"},
                                                                    {"format", "json"}};
  std::chrono::milliseconds timeout{30000};
};

inline constexpr const char* kBaseUrlEnv = "MOD_GDELT_BASE_URL";

inline LiveProfile default_live_profile() {
  LiveProfile p;
  if (const char* env = std::getenv(kBaseUrlEnv); env && *env) p.base_url = env;
  return p;
}

// Query parameters for one UTC day window.
inline httplib::Params live_query_params(const ArticleQuery& q, const LiveProfile& profile) {
  char start[32], end[32];
  std::snprintf(start, sizeof start, "%04d%02u%02u000000", int(q.date.year()),
                unsigned(q.date.month()), unsigned(q.date.day()));
  std::snprintf(end, sizeof end, "%04d%02u%02u235959", int(q.date.year()),
                unsigned(q.date.month()), unsigned(q.date.day()));
  httplib::Params params;
  params.emplace(profile.keyword_param, q.keyword);
  params.emplace(profile.max_records_param, std::to_string(q.max_records));
  params.emplace(profile.start_param, start);
  params.emplace(profile.end_param, end);
  for (const auto& [k, v] : profile.fixed_params) params.emplace(k, v);
  return params;
}

inline std::vector<Article> fetch_articles(const ArticleQuery& q,
                                           const LiveProfile& profile = default_live_profile()) {
  validate(q);
  std::vector<Article> articles;
  if (q.source == SourceKind::kFixture) {
    articles = read_fixture(q.fixture_path);
  } else {
    if (profile.base_url.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "live source needs a base URL");
    }
    http::CallOptions opts;
    opts.timeout = profile.timeout;
    opts.transport_error = ErrorCode::kNetworkError;
    const auto body = http::get(profile.base_url, live_query_params(q, profile), opts);
    articles = parse_article_list(body);
  }
  if (articles.size() > q.max_records) articles.resize(q.max_records);
  return articles;
}

}  // namespace mod::ingest
