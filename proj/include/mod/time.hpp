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
#include <optional>
#include <string>
#include <string_view>

namespace mod {

// All instants are UTC with second resolution.
using Instant = std::chrono::sys_seconds;
using Date = std::chrono::year_month_day;

inline Instant now_utc() {
  return std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now());
}

struct CivilTime {
  int year, month, day, hour, minute, second;
};

inline CivilTime to_civil(Instant t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  return {int(ymd.year()), int(unsigned(ymd.month())), int(unsigned(ymd.day())),
          int(hms.hours().count()), int(hms.minutes().count()), int(hms.seconds().count())};
}

inline std::optional<Instant> from_civil(const CivilTime& c) {
  using namespace std::chrono;
  const year_month_day ymd{year{c.year}, month{unsigned(c.month)}, day{unsigned(c.day)}};
  if (!ymd.ok() || c.hour < 0 || c.hour > 23 || c.minute < 0 || c.minute > 59 ||
      c.second < 0 || c.second > 59) {
    return std::nullopt;
  }
  return sys_days{ymd} + hours{c.hour} + minutes{c.minute} + seconds{c.second};
}

namespace detail {

inline bool parse_digits(std::string_view s, std::size_t pos, std::size_t n, int& out) {
  if (pos + n > s.size()) return false;
  int v = 0;
  for (std::size_t i = pos; i < pos + n; ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
    v = v * 10 + (s[i] - '0');
  }
  out = v;
  return true;
}

}  // namespace detail

// "YYYYMMDDTHHMMSSZ", the article-list seendate format.
inline std::optional<Instant> parse_compact_timestamp(std::string_view s) {
  if (s.size() != 16 || s[8] != 'T' || s[15] != 'Z') return std::nullopt;
  CivilTime c{};
  if (!detail::parse_digits(s, 0, 4, c.year) || !detail::parse_digits(s, 4, 2, c.month) ||
      !detail::parse_digits(s, 6, 2, c.day) || !detail::parse_digits(s, 9, 2, c.hour) ||
      !detail::parse_digits(s, 11, 2, c.minute) || !detail::parse_digits(s, 13, 2, c.second)) {
    return std::nullopt;
  }
  return from_civil(c);
}

inline std::string format_compact_timestamp(Instant t) {
  const auto c = to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d%02d%02dT%02d%02d%02dZ", c.year, c.month, c.day, c.hour,
                c.minute, c.second);
  return buf;
}

// "YYYY-MM-DDTHH:MM:SSZ"
inline std::optional<Instant> parse_iso8601(std::string_view s) {
  if (s.size() != 20 || s[4] != '-' || s[7] != '-' || s[10] != 'T' || s[13] != ':' ||
      s[16] != ':' || s[19] != 'Z') {
    return std::nullopt;
  }
  CivilTime c{};
  if (!detail::parse_digits(s, 0, 4, c.year) || !detail::parse_digits(s, 5, 2, c.month) ||
      !detail::parse_digits(s, 8, 2, c.day) || !detail::parse_digits(s, 11, 2, c.hour) ||
      !detail::parse_digits(s, 14, 2, c.minute) || !detail::parse_digits(s, 17, 2, c.second)) {
    return std::nullopt;
  }
  return from_civil(c);
}

inline std::string format_iso8601(Instant t) {
  const auto c = to_civil(t);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                c.hour, c.minute, c.second);
  return buf;
}

// "YYYY-MM-DD"
inline std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!detail::parse_digits(s, 0, 4, y) || !detail::parse_digits(s, 5, 2, m) ||
      !detail::parse_digits(s, 8, 2, d)) {
    return std::nullopt;
  }
  const Date date{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                  std::chrono::day{unsigned(d)}};
  if (!date.ok()) return std::nullopt;
  return date;
}

inline std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", int(d.year()), unsigned(d.month()),
                unsigned(d.day()));
  return buf;
}

inline Date date_of(Instant t) {
  return Date{std::chrono::floor<std::chrono::days>(t)};
}

}  // namespace mod
