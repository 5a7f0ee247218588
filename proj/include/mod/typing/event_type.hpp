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

#include <array>
#include <optional>
#include <string_view>

#include "mod/error.hpp"

namespace mod {

// The nine disaster types plus out-of-scope. Declaration order is the
// classifier's tie-break order.
enum class EventType {
  kTropicalStorm,
  kFlood,
  kShooting,
  kCovid,
  kEarthquake,
  kHostage,
  kFire,
  kWildfire,
  kExplosion,
  kOos,
};

inline constexpr std::array<EventType, 10> kAllEventTypes = {
    EventType::kTropicalStorm, EventType::kFlood,   EventType::kShooting, EventType::kCovid,
    EventType::kEarthquake,    EventType::kHostage, EventType::kFire,     EventType::kWildfire,
    EventType::kExplosion,     EventType::kOos,
};

inline constexpr std::array<EventType, 9> kDisasterTypes = {
    EventType::kTropicalStorm, EventType::kFlood,   EventType::kShooting,
    EventType::kCovid,         EventType::kEarthquake, EventType::kHostage,
    EventType::kFire,          EventType::kWildfire,   EventType::kExplosion,
};

constexpr std::string_view to_string(EventType t) {
  switch (t) {
    case EventType::kTropicalStorm: return "tropical_storm";
    case EventType::kFlood: return "flood";
    case EventType::kShooting: return "shooting";
    case EventType::kCovid: return "covid";
    case EventType::kEarthquake: return "earthquake";
    case EventType::kHostage: return "hostage";
    case EventType::kFire: return "fire";
    case EventType::kWildfire: return "wildfire";
    case EventType::kExplosion: return "explosion";
    case EventType::kOos: return "oos";
  }
  return "oos";
}

constexpr std::optional<EventType> parse_event_type(std::string_view label) {
  for (auto t : kAllEventTypes) {
    if (to_string(t) == label) return t;
  }
  return std::nullopt;
}

inline EventType event_type_from_label(std::string_view label) {
  if (auto t = parse_event_type(label)) return *t;
  throw Error(ErrorCode::kFormatError, "unknown event type '" + std::string(label) + "'");
}

}  // namespace mod
