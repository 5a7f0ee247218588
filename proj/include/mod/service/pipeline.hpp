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
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mod/embed/embedder.hpp"
#include "mod/error.hpp"
#include "mod/graph/event_graph.hpp"
#include "mod/graph/jsonld.hpp"
#include "mod/ingest/article.hpp"
#include "mod/ingest/fetch.hpp"
#include "mod/ingest/normalize.hpp"
#include "mod/linking/gazetteer.hpp"
#include "mod/linking/remote.hpp"
#include "mod/linking/wikimap.hpp"
#include "mod/service/config.hpp"
#include "mod/time.hpp"
#include "mod/typing/prototypes.hpp"
#include "mod/viz/views.hpp"

namespace mod::service {

// Read-only startup assets.
struct Assets {
  typing::PrototypeSet prototypes;
  linking::Gazetteer gazetteer;
  linking::WikiMapping wikimap;
  graph::TypeQidTable type_qids;
};

inline typing::PrototypeSet load_or_fit_prototypes(const ServiceConfig& cfg,
                                                   const embed::Embedder& embedder) {
  const auto& cache = cfg.assets.prototypes_cache;
  if (!cache.empty() && std::filesystem::exists(cache)) {
    auto protos = typing::prototypes_from_json(nlohmann::json::parse(tsv::read_file(cache)));
    if (protos.dimension() == cfg.embedder.dimension) {
      return protos.with_threshold(cfg.oos_threshold);
    }
  }
  auto protos = typing::fit_prototypes(typing::load_seed_examples(cfg.assets.seed_examples),
                                       embedder, cfg.oos_threshold);
  if (!cache.empty()) {
    std::ofstream out(cache, std::ios::trunc);
    if (out) out << typing::to_json(protos).dump() << '\n';
  }
  return protos;
}

inline Assets load_assets(const ServiceConfig& cfg, const embed::Embedder& embedder) {
  return {load_or_fit_prototypes(cfg, embedder), linking::load_gazetteer(cfg.assets.gazetteer),
          linking::load_wikimap(cfg.assets.wikimap), graph::load_type_qids(cfg.assets.type_qids)};
}

struct ExtractResult {
  typing::TypedMention mention;
  std::vector<linking::LinkedEntity> entities;
  std::vector<linking::EntityMention> unmapped;
  graph::EventGraph graph;
};

struct Counts {
  std::size_t fetched = 0;
  std::size_t english = 0;
  std::size_t unique = 0;
};

struct VisualizeResult {
  Counts counts;
  std::optional<viz::Views> views;  // empty when `reason` is set
  std::optional<std::string> reason;
};

// The extraction and visualization pipelines over immutable assets. All
// methods are const and safe to call concurrently.
class Pipeline {
 public:
  Pipeline(ServiceConfig cfg, Assets assets)
      : cfg_(std::move(cfg)), embedder_(cfg_.embedder), assets_(std::move(assets)) {}

  static Pipeline load(const ServiceConfig& cfg) {
    embed::Embedder embedder(cfg.embedder);
    return Pipeline(cfg, load_assets(cfg, embedder));
  }

  const ServiceConfig& config() const noexcept { return cfg_; }
  const Assets& assets() const noexcept { return assets_; }
  const embed::Embedder& embedder() const noexcept { return embedder_; }

  std::vector<linking::EntityMention> find_entities(std::string_view text) const {
    if (cfg_.linker.backend == LinkerBackend::kRemote) {
      return linking::resolve_remote(
          text, {cfg_.linker.endpoint, cfg_.linker.score_floor, cfg_.linker.timeout},
          assets_.gazetteer);
    }
    return linking::link_entities(text, assets_.gazetteer);
  }

  // normalize -> embed -> classify -> link -> build graph
  ExtractResult extract(std::string_view raw_text, Instant now = now_utc()) const {
    auto text = normalize_title(raw_text);
    auto vector = embedder_.embed(text);
    auto typed = typing::type_mention(std::move(text), std::move(vector), assets_.prototypes);
    auto resolution = linking::resolve_qids(find_entities(typed.mention), assets_.wikimap);
    auto g = graph::build_event_graph(typed, resolution.linked, cfg_.publisher, now,
                                      assets_.type_qids, cfg_.vocab);
    return {std::move(typed), std::move(resolution.linked), std::move(resolution.unmapped),
            std::move(g)};
  }

  // fetch -> English filter -> normalize -> dedupe -> embed -> classify -> views
  VisualizeResult visualize(const std::string& keyword, Date date) const {
    ingest::ArticleQuery q;
    q.keyword = keyword;
    q.date = date;
    q.max_records = cfg_.max_records;
    q.source = cfg_.source;
    q.fixture_path = cfg_.fixture_path;
    ingest::validate(q);

    VisualizeResult r;
    const auto articles = ingest::fetch_articles(q, cfg_.live);
    r.counts.fetched = articles.size();
    const auto english = ingest::filter_english(articles);
    r.counts.english = english.size();

    std::vector<MentionText> mentions;
    for (const auto& a : english) {
      try {
        mentions.push_back(normalize_title(a.title));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kEmptyTitle) throw;
      }
    }
    mentions = ingest::dedupe_mentions(mentions);
    r.counts.unique = mentions.size();
    if (mentions.size() < 2) {
      r.reason = "insufficient_data";
      return r;
    }

    const auto vectors = embedder_.embed_batch(mentions);
    std::vector<typing::TypedMention> typed;
    typed.reserve(mentions.size());
    for (std::size_t i = 0; i < mentions.size(); ++i) {
      typed.push_back(typing::type_mention(mentions[i], vectors[i], assets_.prototypes));
    }
    try {
      r.views = viz::build_views(typed, cfg_.dbscan);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateInput) throw;
      r.reason = "insufficient_data";
    }
    return r;
  }

 private:
  ServiceConfig cfg_;
  embed::Embedder embedder_;
  Assets assets_;
};

}  // namespace mod::service
