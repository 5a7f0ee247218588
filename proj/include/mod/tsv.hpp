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
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "mod/error.hpp"

namespace mod::tsv {

using Row = std::vector<std::string>;

// Parses tab-separated text. Blank lines and lines starting with '#' are
// skipped. A first row equal to `header` is treated as the header and dropped.
// Every remaining row must have exactly header.size() columns.
inline std::vector<Row> parse(std::string_view content, std::initializer_list<std::string_view> header,
                              std::string_view source_name = "<tsv>") {
  std::vector<Row> rows;
  bool first = true;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto end = content.find('\n', pos);
    if (end == std::string_view::npos) end = content.size();
    std::string_view line = content.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.front() == '#') {
      if (end == content.size()) break;
      continue;
    }
    Row row;
    std::size_t start = 0;
    while (true) {
      const auto tab = line.find('\t', start);
      row.emplace_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos
                                                                        : tab - start));
      if (tab == std::string_view::npos) break;
      start = tab + 1;
    }
    if (first) {
      first = false;
      if (row.size() == header.size() && std::equal(row.begin(), row.end(), header.begin())) {
        continue;
      }
    }
    if (row.size() != header.size()) {
      throw Error(ErrorCode::kFormatError, std::string(source_name) + ":" +
                                               std::to_string(line_no) + ": expected " +
                                               std::to_string(header.size()) + " columns, got " +
                                               std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
    if (end == content.size()) break;
  }
  return rows;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<Row> load(const std::filesystem::path& path,
                             std::initializer_list<std::string_view> header) {
  return parse(read_file(path), header, path.string());
}

}  // namespace mod::tsv
