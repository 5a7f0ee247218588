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

// Service configuration. Sources are layered: built-in defaults, then the
// JSON config file, then MOD_* environment variables, then CLI flags.
//
// Config file keys (all optional):
//
//   listen               "host:port"
//   source               "live" | "fixture"
//   fixture_path         article-list JSON used when source = fixture
//   max_records          1..250
//   gdelt_base_url       live document API endpoint
//   embedder             {backend, endpoint, dimension, ngram_min, ngram_max, timeout_ms}
//   oos_threshold        (0, 1)
//   dbscan               {eps, min_pts}
//   publisher            hasPublisher literal
//   event_namespace      prefix for minted event ids
//   ontology_namespace   prefix for the Event class and properties
//   data_dir             event store root
//   static_dir           optional directory served at /
//   assets               {seed_examples, gazetteer, wikimap, type_qids, prototypes_cache}
//   linker               {backend: "gazetteer" | "remote", endpoint, score_floor, timeout_ms}
//
// Relative paths in the file resolve against the file's directory.

#pragma once

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "mod/embed/embedder.hpp"
#include "mod/error.hpp"
#include "mod/graph/event_graph.hpp"
#include "mod/ingest/fetch.hpp"
#include "mod/tsv.hpp"
#include "mod/typing/prototypes.hpp"
#include "mod/viz/dbscan.hpp"

#ifndef MOD_DEFAULT_ASSET_DIR
#define MOD_DEFAULT_ASSET_DIR "data"
#endif

namespace mod::service {

namespace fs = std::filesystem;

struct AssetPaths {
  fs::path seed_examples;
  fs::path gazetteer;
  fs::path wikimap;
  fs::path type_qids;
  fs::path prototypes_cache;  // optional

  static AssetPaths bundled(const fs::path& dir = MOD_DEFAULT_ASSET_DIR) {
    return {dir / "seed_examples.tsv", dir / "gazetteer.tsv", dir / "wikimap.tsv",
            dir / "type_qids.tsv", {}};
  }
};

enum class LinkerBackend { kGazetteer, kRemote };

struct LinkerConfig {
  LinkerBackend backend = LinkerBackend::kGazetteer;
  std::string endpoint;
  double score_floor = 0.0;
  std::chrono::milliseconds timeout{10000};
};

struct ServiceConfig {
  std::string listen_host = "127.0.0.1";
  int listen_port = 8080;
  ingest::SourceKind source = ingest::SourceKind::kLive;
  fs::path fixture_path;
  std::size_t max_records = ingest::kMaxRecordsCap;
  ingest::LiveProfile live = ingest::LiveProfile{};
  embed::EmbedderConfig embedder;
  // Calibrated for the reference embedder: leave-one-out seed confidences
  // and held-out non-event headlines cross near 0.2.
  double oos_threshold = 0.2;
  viz::DbscanParams dbscan;
  std::string publisher = "HiTec";
  graph::Vocabulary vocab;
  fs::path data_dir = "mod-data";
  fs::path static_dir;
  AssetPaths assets = AssetPaths::bundled();
  LinkerConfig linker;
};

// "host:port"; port must be 0..65535 (0 = pick any free port).
inline void set_listen(ServiceConfig& cfg, std::string_view spec) {
  const auto colon = spec.rfind(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == spec.size()) {
    throw Error(ErrorCode::kInvalidArgument, "listen address must be host:port, got '" +
                                                 std::string(spec) + "'");
  }
  int port = 0;
  for (char c : spec.substr(colon + 1)) {
    if (c < '0' || c > '9') {
      throw Error(ErrorCode::kInvalidArgument, "bad port in '" + std::string(spec) + "'");
    }
    port = port * 10 + (c - '0');
    if (port > 65535) throw Error(ErrorCode::kInvalidArgument, "port out of range");
  }
  cfg.listen_host = std::string(spec.substr(0, colon));
  cfg.listen_port = port;
}

inline ingest::SourceKind parse_source(std::string_view s) {
  if (s == "live") return ingest::SourceKind::kLive;
  if (s == "fixture") return ingest::SourceKind::kFixture;
  throw Error(ErrorCode::kInvalidArgument, "source must be 'live' or 'fixture'");
}

inline void apply_json(ServiceConfig& cfg, const nlohmann::json& j, const fs::path& base_dir) {
  const auto path = [&](const nlohmann::json& v) {
    fs::path p = v.get<std::string>();
    return p.is_relative() ? base_dir / p : p;
  };
  try {
    if (j.contains("listen")) set_listen(cfg, j["listen"].get<std::string>());
    if (j.contains("source")) cfg.source = parse_source(j["source"].get<std::string>());
    if (j.contains("fixture_path")) cfg.fixture_path = path(j["fixture_path"]);
    if (j.contains("max_records")) cfg.max_records = j["max_records"].get<std::size_t>();
    if (j.contains("gdelt_base_url")) cfg.live.base_url = j["gdelt_base_url"].get<std::string>();
    if (j.contains("embedder")) {
      const auto& e = j["embedder"];
      if (e.contains("backend")) {
        const auto b = e["backend"].get<std::string>();
        if (b == "reference") {
          cfg.embedder.backend = embed::Backend::kReference;
        } else if (b == "remote") {
          cfg.embedder.backend = embed::Backend::kRemote;
        } else {
          throw Error(ErrorCode::kInvalidArgument, "embedder backend must be reference|remote");
        }
      }
      if (e.contains("endpoint")) cfg.embedder.endpoint = e["endpoint"].get<std::string>();
      if (e.contains("dimension")) cfg.embedder.dimension = e["dimension"].get<std::size_t>();
      if (e.contains("ngram_min")) cfg.embedder.ngram_min = e["ngram_min"].get<int>();
      if (e.contains("ngram_max")) cfg.embedder.ngram_max = e["ngram_max"].get<int>();
      if (e.contains("timeout_ms")) {
        cfg.embedder.timeout = std::chrono::milliseconds(e["timeout_ms"].get<long>());
      }
    }
    if (j.contains("oos_threshold")) cfg.oos_threshold = j["oos_threshold"].get<double>();
    if (j.contains("dbscan")) {
      const auto& d = j["dbscan"];
      if (d.contains("eps")) cfg.dbscan.eps = d["eps"].get<double>();
      if (d.contains("min_pts")) cfg.dbscan.min_pts = d["min_pts"].get<std::size_t>();
    }
    if (j.contains("publisher")) cfg.publisher = j["publisher"].get<std::string>();
    if (j.contains("event_namespace")) {
      cfg.vocab.event_namespace = j["event_namespace"].get<std::string>();
    }
    if (j.contains("ontology_namespace")) {
      cfg.vocab.ontology_namespace = j["ontology_namespace"].get<std::string>();
    }
    if (j.contains("data_dir")) cfg.data_dir = path(j["data_dir"]);
    if (j.contains("static_dir")) cfg.static_dir = path(j["static_dir"]);
    if (j.contains("assets")) {
      const auto& a = j["assets"];
      if (a.contains("seed_examples")) cfg.assets.seed_examples = path(a["seed_examples"]);
      if (a.contains("gazetteer")) cfg.assets.gazetteer = path(a["gazetteer"]);
      if (a.contains("wikimap")) cfg.assets.wikimap = path(a["wikimap"]);
      if (a.contains("type_qids")) cfg.assets.type_qids = path(a["type_qids"]);
      if (a.contains("prototypes_cache")) {
        cfg.assets.prototypes_cache = path(a["prototypes_cache"]);
      }
    }
    if (j.contains("linker")) {
      const auto& l = j["linker"];
      if (l.contains("backend")) {
        const auto b = l["backend"].get<std::string>();
        if (b == "gazetteer") {
          cfg.linker.backend = LinkerBackend::kGazetteer;
        } else if (b == "remote") {
          cfg.linker.backend = LinkerBackend::kRemote;
        } else {
          throw Error(ErrorCode::kInvalidArgument, "linker backend must be gazetteer|remote");
        }
      }
      if (l.contains("endpoint")) cfg.linker.endpoint = l["endpoint"].get<std::string>();
      if (l.contains("score_floor")) cfg.linker.score_floor = l["score_floor"].get<double>();
      if (l.contains("timeout_ms")) {
        cfg.linker.timeout = std::chrono::milliseconds(l["timeout_ms"].get<long>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("bad config value: ") + e.what());
  }
}

inline void apply_env(ServiceConfig& cfg) {
  const auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v || !*v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = env(ingest::kBaseUrlEnv)) cfg.live.base_url = *v;
  if (auto v = env("MOD_LISTEN")) set_listen(cfg, *v);
  if (auto v = env("MOD_SOURCE")) cfg.source = parse_source(*v);
  if (auto v = env("MOD_FIXTURE_PATH")) cfg.fixture_path = *v;
  if (auto v = env("MOD_MAX_RECORDS")) cfg.max_records = std::stoul(*v);
  if (auto v = env("MOD_DATA_DIR")) cfg.data_dir = *v;
  if (auto v = env("MOD_PUBLISHER")) cfg.publisher = *v;
  if (auto v = env("MOD_OOS_THRESHOLD")) cfg.oos_threshold = std::stod(*v);
  if (auto v = env("MOD_EMBEDDER_ENDPOINT")) {
    cfg.embedder.backend = embed::Backend::kRemote;
    cfg.embedder.endpoint = *v;
  }
  if (auto v = env("MOD_LINKER_ENDPOINT")) {
    cfg.linker.backend = LinkerBackend::kRemote;
    cfg.linker.endpoint = *v;
  }
}

// Defaults, then `file` when given, then the environment.
inline ServiceConfig load_config(const std::optional<fs::path>& file) {
  ServiceConfig cfg;
  if (file) {
    const auto content = tsv::read_file(*file);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kInvalidArgument,
                  "config " + file->string() + " is not JSON: " + e.what());
    }
    apply_json(cfg, j, fs::absolute(*file).parent_path());
  }
  apply_env(cfg);
  return cfg;
}

// Checks invariants that only make sense once all layers are applied, and
// creates the data directory.
inline void validate(const ServiceConfig& cfg) {
  if (cfg.listen_host.empty() || cfg.listen_port < 0 || cfg.listen_port > 65535) {
    throw Error(ErrorCode::kInvalidArgument, "bad listen address");
  }
  if (cfg.max_records == 0 || cfg.max_records > ingest::kMaxRecordsCap) {
    throw Error(ErrorCode::kInvalidArgument, "max_records must be in [1, 250]");
  }
  if (cfg.source == ingest::SourceKind::kFixture && cfg.fixture_path.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "fixture source needs fixture_path");
  }
  if (!(cfg.oos_threshold > 0.0 && cfg.oos_threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "oos_threshold must lie in (0, 1)");
  }
  embed::validate(cfg.embedder);
  viz::validate(cfg.dbscan);
  if (cfg.linker.backend == LinkerBackend::kRemote && cfg.linker.endpoint.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "remote linker needs an endpoint");
  }
  std::error_code ec;
  fs::create_directories(cfg.data_dir, ec);
  const auto probe = cfg.data_dir / ".write-probe";
  {
    std::ofstream out(probe);
    if (ec || !out) {
      throw Error(ErrorCode::kIoError, "data directory " + cfg.data_dir.string() +
                                           " is not writable");
    }
  }
  fs::remove(probe, ec);
}

}  // namespace mod::service
