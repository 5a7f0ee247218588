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

// mod: command-line front end for the event monitoring pipeline.
//
//   mod extract   --text "headline" [--keyword K] [--date YYYY-MM-DD] [--dry-run]
//   mod visualize --keyword K --date YYYY-MM-DD [--source live|fixture] [--fixture-path F]
//   mod serve     [--listen host:port] [--source ...] [--fixture-path F] [--max-records N]
//
// Every subcommand accepts --config FILE. Precedence: defaults < config file
// < MOD_* environment variables < flags.

#include <csignal>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mod/mod.hpp"

namespace {

mod::service::Server* g_server = nullptr;

void handle_signal(int) {
  if (g_server) g_server->stop();
}

struct Common {
  std::string config_path;
  std::string source;
  std::string fixture_path;
  std::size_t max_records = 0;
  std::string data_dir;
  std::string listen;
};

void add_source_flags(CLI::App* cmd, Common& c) {
  cmd->add_option("--source", c.source, "article source")->check(CLI::IsMember({"live", "fixture"}));
  cmd->add_option("--fixture-path", c.fixture_path, "article-list JSON for --source fixture");
  cmd->add_option("--max-records", c.max_records, "cap on fetched articles")
      ->check(CLI::Range(1, 250));
}

mod::service::ServiceConfig resolve(const Common& c) {
  auto cfg = mod::service::load_config(
      c.config_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(c.config_path));
  if (!c.source.empty()) cfg.source = mod::service::parse_source(c.source);
  if (!c.fixture_path.empty()) cfg.fixture_path = c.fixture_path;
  if (c.max_records) cfg.max_records = c.max_records;
  if (!c.data_dir.empty()) cfg.data_dir = c.data_dir;
  if (!c.listen.empty()) mod::service::set_listen(cfg, c.listen);
  mod::service::validate(cfg);
  return cfg;
}

int run_extract(const Common& c, const std::vector<std::string>& texts, const std::string& file,
                const std::string& keyword, const std::string& date, bool dry_run) {
  const auto cfg = resolve(c);
  const auto pipeline = mod::service::Pipeline::load(cfg);
  std::optional<mod::service::EventStore> store;
  if (!dry_run) store.emplace(cfg.data_dir, cfg.vocab);

  std::vector<std::string> inputs = texts;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) throw mod::Error(mod::ErrorCode::kIoError, "cannot read " + file);
    for (std::string line; std::getline(in, line);) {
      if (!mod::text::trim(line).empty()) inputs.push_back(line);
    }
  }
  if (inputs.empty()) throw mod::Error(mod::ErrorCode::kInvalidArgument, "no input text");

  const auto now = mod::now_utc();
  mod::Date query_date = mod::date_of(now);
  if (!date.empty()) {
    const auto d = mod::parse_date(date);
    if (!d) throw mod::Error(mod::ErrorCode::kInvalidArgument, "--date must be YYYY-MM-DD");
    query_date = *d;
  }
  for (const auto& t : inputs) {
    const auto r = pipeline.extract(t, now);
    if (store) store->store({r.graph, keyword, query_date, now});
    const auto doc = mod::graph::to_jsonld(r.graph, cfg.vocab);
    // One document pretty-printed, several as JSON lines.
    std::cout << (inputs.size() == 1 ? doc.dump(2) : doc.dump()) << '\n';
  }
  return 0;
}

int run_visualize(const Common& c, const std::string& keyword, const std::string& date) {
  const auto cfg = resolve(c);
  const auto d = mod::parse_date(date);
  if (!d) throw mod::Error(mod::ErrorCode::kInvalidArgument, "--date must be YYYY-MM-DD");
  const auto pipeline = mod::service::Pipeline::load(cfg);
  const auto result = pipeline.visualize(keyword, *d);
  std::cout << mod::service::to_json(result, keyword, *d).dump(2) << '\n';
  return 0;
}

int run_serve(const Common& c) {
  const auto cfg = resolve(c);
  const auto pipeline = mod::service::Pipeline::load(cfg);
  mod::service::EventStore store(cfg.data_dir, cfg.vocab);
  mod::service::Server server(pipeline, store);
  g_server = &server;
  std::signal(SIGINT, handle_signal);
  std::signal(SIGTERM, handle_signal);
  std::cerr << "[mod] listening on " << cfg.listen_host << ":" << cfg.listen_port
            << " (data: " << cfg.data_dir.string() << ")\n";
  const bool ok = server.listen(cfg.listen_host, cfg.listen_port);
  g_server = nullptr;
  if (!ok) {
    std::cerr << "[mod] cannot listen on " << cfg.listen_host << ":" << cfg.listen_port << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Disaster event monitoring: extraction, linking and visualization"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--data-dir", common.data_dir, "event store directory");

  auto* extract = app.add_subcommand("extract", "extract an event graph from headline text");
  std::vector<std::string> texts;
  std::string input_file, keyword, date;
  bool dry_run = false;
  extract->add_option("--text,text", texts, "headline(s)");
  extract->add_option("--file", input_file, "file with one headline per line");
  extract->add_option("--keyword", keyword, "keyword recorded with the stored event");
  extract->add_option("--date", date, "query date recorded with the stored event");
  extract->add_flag("--dry-run", dry_run, "do not persist");

  auto* visualize = app.add_subcommand("visualize", "build the classification/clustering views");
  std::string viz_keyword, viz_date;
  visualize->add_option("--keyword", viz_keyword, "search keyword")->required();
  visualize->add_option("--date", viz_date, "UTC day, YYYY-MM-DD")->required();
  add_source_flags(visualize, common);

  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--listen", common.listen, "host:port");
  add_source_flags(serve, common);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*extract) return run_extract(common, texts, input_file, keyword, date, dry_run);
    if (*visualize) return run_visualize(common, viz_keyword, viz_date);
    if (*serve) return run_serve(common);
  } catch (const mod::Error& e) {
    std::cerr << "mod: " << mod::to_string(e.code()) << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "mod: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
