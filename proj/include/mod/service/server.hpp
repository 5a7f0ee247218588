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

// HTTP API.
//
//   GET  /health
//   POST /api/extract            {"text": ..., "keyword"?: ..., "date"?: "YYYY-MM-DD"}
//   GET  /api/visualize?keyword=&date=YYYY-MM-DD
//   GET  /api/events?keyword=&date=YYYY-MM-DD
//
// Every response is UTF-8 JSON. Failures carry {"code", "message"}.

#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include <httplib.h>
#include <json.hpp>

#include "mod/error.hpp"
#include "mod/graph/jsonld.hpp"
#include "mod/service/pipeline.hpp"
#include "mod/service/store.hpp"
#include "mod/time.hpp"
#include "mod/viz/views.hpp"

namespace mod::service {

inline int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kEmptyTitle:
    case ErrorCode::kEmptyText:
      return 400;
    case ErrorCode::kNetworkError:
    case ErrorCode::kRemoteUnavailable:
    case ErrorCode::kFormatError:
    case ErrorCode::kDimensionMismatch:
    case ErrorCode::kFixtureNotFound:
      return 502;
    default:
      return 500;
  }
}

inline nlohmann::json error_body(std::string_view code, std::string_view message) {
  return {{"code", code}, {"message", message}};
}

inline nlohmann::json to_json(const StoredEvent& e, const graph::Vocabulary& vocab) {
  return {{"keyword", e.keyword},
          {"query_date", format_date(e.query_date)},
          {"created_at", format_iso8601(e.created_at)},
          {"graph", graph::to_jsonld(e.graph, vocab)}};
}

inline nlohmann::json to_json(const VisualizeResult& r, const std::string& keyword, Date date) {
  nlohmann::json body{{"keyword", keyword},
                      {"date", format_date(date)},
                      {"counts",
                       {{"fetched", r.counts.fetched},
                        {"english", r.counts.english},
                        {"unique", r.counts.unique}}}};
  if (r.views) {
    body["points_classification"] = viz::to_json(r.views->classification);
    body["points_clustering"] = viz::to_json(r.views->clustering);
  } else {
    body["points_classification"] = nlohmann::json::array();
    body["points_clustering"] = nlohmann::json::array();
  }
  if (r.reason) body["reason"] = *r.reason;
  return body;
}

class Server {
 public:
  Server(const Pipeline& pipeline, EventStore& store) : pipeline_(pipeline), store_(store) {
    routes();
  }

  // Binds and serves until stop(). Port 0 picks a free port.
  bool listen(const std::string& host, int port) {
    if (port == 0) {
      port_ = http_.bind_to_any_port(host);
      if (port_ < 0) return false;
      return http_.listen_after_bind();
    }
    port_ = port;
    return http_.listen(host, port);
  }

  // For in-process use: bind to a free port without serving yet.
  int bind_any(const std::string& host) {
    port_ = http_.bind_to_any_port(host);
    return port_;
  }
  bool serve_bound() { return http_.listen_after_bind(); }

  void wait_until_ready() const { http_.wait_until_ready(); }
  void stop() { http_.stop(); }
  int port() const noexcept { return port_; }

 private:
  static void reply(httplib::Response& res, int status, const nlohmann::json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
  }

  template <class F>
  static void guarded(httplib::Response& res, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      reply(res, http_status(e.code()), error_body(to_string(e.code()), e.what()));
    } catch (const std::exception& e) {
      reply(res, 500, error_body("internal", e.what()));
    }
  }

  static std::optional<Date> date_param(const httplib::Request& req, bool& bad) {
    bad = false;
    if (!req.has_param("date")) return std::nullopt;
    auto d = parse_date(req.get_param_value("date"));
    if (!d) bad = true;
    return d;
  }

  void routes() {
    http_.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    if (!pipeline_.config().static_dir.empty()) {
      http_.set_mount_point("/", pipeline_.config().static_dir.string());
    }

    http_.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      reply(res, 200, {{"status", "ok"}});
    });

    http_.Post("/api/extract", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { handle_extract(req, res); });
    });

    http_.Get("/api/visualize", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { handle_visualize(req, res); });
    });

    http_.Get("/api/events", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] { handle_events(req, res); });
    });
  }

  void handle_extract(const httplib::Request& req, httplib::Response& res) {
    nlohmann::json body;
    try {
      body = nlohmann::json::parse(req.body);
    } catch (const nlohmann::json::parse_error&) {
      return reply(res, 400, error_body("bad_request", "body is not valid JSON"));
    }
    if (!body.is_object() || !body.contains("text") || !body["text"].is_string()) {
      return reply(res, 400, error_body("bad_request", "body needs a string 'text' field"));
    }
    const auto text = body["text"].get<std::string>();
    if (text::trim(text).empty()) {
      return reply(res, 400, error_body("bad_request", "'text' must be non-empty"));
    }
    std::string keyword;
    if (body.contains("keyword") && body["keyword"].is_string()) {
      keyword = body["keyword"].get<std::string>();
    }
    const auto now = now_utc();
    Date query_date = date_of(now);
    if (body.contains("date")) {
      const auto d = body["date"].is_string() ? parse_date(body["date"].get<std::string>())
                                              : std::nullopt;
      if (!d) return reply(res, 400, error_body("bad_request", "'date' must be YYYY-MM-DD"));
      query_date = *d;
    }

    const auto result = pipeline_.extract(text, now);
    store_.store({result.graph, keyword, query_date, now});
    reply(res, 200, graph::to_jsonld(result.graph, pipeline_.config().vocab));
  }

  void handle_visualize(const httplib::Request& req, httplib::Response& res) {
    const auto keyword = req.get_param_value("keyword");
    if (text::trim(keyword).empty()) {
      return reply(res, 400, error_body("bad_request", "'keyword' must be non-empty"));
    }
    bool bad = false;
    const auto date = date_param(req, bad);
    if (bad || !date) return reply(res, 400, error_body("bad_request", "'date' must be YYYY-MM-DD"));
    const auto result = pipeline_.visualize(keyword, *date);
    reply(res, 200, to_json(result, keyword, *date));
  }

  void handle_events(const httplib::Request& req, httplib::Response& res) {
    EventFilter filter;
    if (req.has_param("keyword")) filter.keyword = req.get_param_value("keyword");
    bool bad = false;
    filter.date = date_param(req, bad);
    if (bad) return reply(res, 400, error_body("bad_request", "'date' must be YYYY-MM-DD"));
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : store_.list(filter)) arr.push_back(to_json(e, pipeline_.config().vocab));
    reply(res, 200, arr);
  }

  const Pipeline& pipeline_;
  EventStore& store_;
  httplib::Server http_;
  int port_ = -1;
};

}  // namespace mod::service
