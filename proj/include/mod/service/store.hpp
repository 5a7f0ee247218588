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

// Append-only event store.
//
//   <data_dir>/<YYYY-MM-DD>/<uuid>.jsonld   one document per event
//   <data_dir>/index.jsonl                  one JSON object per line
//
// Documents are created with O_EXCL so two writers can never clobber each
// other; index records are appended with a single write(2) on an O_APPEND
// descriptor, which keeps every line intact under concurrent writers.

#pragma once

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mod/error.hpp"
#include "mod/graph/jsonld.hpp"
#include "mod/time.hpp"
#include "mod/tsv.hpp"

namespace mod::service {

struct StoredEvent {
  graph::EventGraph graph;
  std::string keyword;
  Date query_date{};
  Instant created_at{};
};

struct EventFilter {
  std::optional<std::string> keyword;
  std::optional<Date> date;
};

namespace detail {

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const noexcept { return fd_; }

 private:
  int fd_;
};

inline void write_all(int fd, std::string_view data, const std::filesystem::path& path) {
  while (!data.empty()) {
    const auto n = ::write(fd, data.data(), data.size());
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kIoError,
                  "write to " + path.string() + " failed: " + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

}  // namespace detail

class EventStore {
 public:
  explicit EventStore(std::filesystem::path data_dir, graph::Vocabulary vocab = {})
      : root_(std::move(data_dir)), vocab_(std::move(vocab)) {
    std::error_code ec;
    std::filesystem::create_directories(root_, ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create " + root_.string() + ": " + ec.message());
  }

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path index_path() const { return root_ / "index.jsonl"; }

  // Returns the path of the written document.
  std::filesystem::path store(const StoredEvent& e) {
    const auto day = format_date(e.query_date);
    const auto uuid = graph::uuid_of(e.graph);
    const auto rel = std::filesystem::path(day) / (uuid + ".jsonld");
    const auto path = root_ / rel;

    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error(ErrorCode::kIoError, "cannot create " + path.parent_path().string());
    {
      detail::Fd fd(::open(path.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_CLOEXEC, 0644));
      if (fd.get() < 0) {
        throw Error(ErrorCode::kIoError,
                    "cannot create " + path.string() + ": " + std::strerror(errno));
      }
      detail::write_all(fd.get(), graph::serialize_jsonld(e.graph, vocab_) + "\n", path);
    }

    const nlohmann::json record{{"uuid", uuid},
                                {"id", e.graph.id},
                                {"keyword", e.keyword},
                                {"query_date", day},
                                {"created_at", format_iso8601(e.created_at)},
                                {"path", rel.generic_string()}};
    const auto line = record.dump() + "\n";
    std::lock_guard lock(index_mutex_);
    const auto index = index_path();
    detail::Fd fd(::open(index.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
    if (fd.get() < 0) {
      throw Error(ErrorCode::kIoError, "cannot open " + index.string() + ": " + std::strerror(errno));
    }
    detail::write_all(fd.get(), line, index);
    return path;
  }

  // Matching events, newest first. Records appended later win ties.
  std::vector<StoredEvent> list(const EventFilter& filter = {}) const {
    std::vector<StoredEvent> out;
    const auto index = index_path();
    if (!std::filesystem::exists(index)) return out;
    std::ifstream in(index);
    if (!in) throw Error(ErrorCode::kIoError, "cannot read " + index.string());
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      nlohmann::json rec;
      try {
        rec = nlohmann::json::parse(line);
      } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::kIoError, "corrupt index line in " + index.string());
      }
      const auto keyword = rec.value("keyword", std::string());
      const auto date = parse_date(rec.value("query_date", std::string()));
      const auto created = parse_iso8601(rec.value("created_at", std::string()));
      if (!date || !created) throw Error(ErrorCode::kIoError, "corrupt index record: " + line);
      if (filter.keyword && *filter.keyword != keyword) continue;
      if (filter.date && *filter.date != *date) continue;
      const auto doc_path = root_ / rec.value("path", std::string());
      StoredEvent e;
      e.graph = graph::parse_jsonld(tsv::read_file(doc_path), vocab_);
      e.keyword = keyword;
      e.query_date = *date;
      e.created_at = *created;
      out.push_back(std::move(e));
    }
    std::reverse(out.begin(), out.end());
    std::stable_sort(out.begin(), out.end(), [](const StoredEvent& a, const StoredEvent& b) {
      return a.created_at > b.created_at;
    });
    return out;
  }

 private:
  std::filesystem::path root_;
  graph::Vocabulary vocab_;
  std::mutex index_mutex_;
};

}  // namespace mod::service
