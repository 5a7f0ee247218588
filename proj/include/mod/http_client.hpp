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

// Thin blocking HTTP helpers over cpp-httplib. Each call opens its own
// connection, so concurrent use needs no locking.

#pragma once

#include <chrono>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "mod/error.hpp"

namespace mod::http {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;    // begins with '/'
};

inline Url split_url(std::string_view url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw Error(ErrorCode::kInvalidArgument, "URL without scheme: " + std::string(url));
  }
  const auto scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw Error(ErrorCode::kInvalidArgument, "unsupported URL scheme: " + std::string(url));
  }
  const auto path_start = url.find('/', scheme_end + 3);
  Url out;
  if (path_start == std::string_view::npos) {
    out.origin = std::string(url);
    out.path = "/";
  } else {
    out.origin = std::string(url.substr(0, path_start));
    out.path = std::string(url.substr(path_start));
  }
  if (out.origin.size() <= scheme_end + 3) {
    throw Error(ErrorCode::kInvalidArgument, "URL without host: " + std::string(url));
  }
  return out;
}

struct CallOptions {
  std::chrono::milliseconds timeout{10000};
  // Error code used for transport failures and non-2xx statuses.
  ErrorCode transport_error = ErrorCode::kNetworkError;
};

inline httplib::Client make_client(const Url& url, const CallOptions& opts) {
  httplib::Client client(url.origin);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(opts.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(opts.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());
  client.set_follow_location(true);
  return client;
}

inline nlohmann::json parse_body(const std::string& body, std::string_view what) {
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormatError,
                "unparseable response from " + std::string(what) + ": " + e.what());
  }
}

inline std::string get(std::string_view url, const httplib::Params& params,
                       const CallOptions& opts = {}) {
  const auto u = split_url(url);
  auto client = make_client(u, opts);
  auto res = client.Get(u.path, params, httplib::Headers{});
  if (!res) {
    throw Error(opts.transport_error,
                "GET " + std::string(url) + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(opts.transport_error,
                "GET " + std::string(url) + " returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

inline nlohmann::json post_json(std::string_view url, const nlohmann::json& body,
                                const CallOptions& opts = {}) {
  const auto u = split_url(url);
  auto client = make_client(u, opts);
  auto res = client.Post(u.path, body.dump(), "application/json");
  if (!res) {
    throw Error(opts.transport_error,
                "POST " + std::string(url) + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(opts.transport_error,
                "POST " + std::string(url) + " returned HTTP " + std::to_string(res->status));
  }
  return parse_body(res->body, url);
}

}  // namespace mod::http
