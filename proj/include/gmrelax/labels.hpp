//
// gmrelax - Copyright 2026 The gmrelax Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <string_view>

namespace gmrelax {

/// Whether the identity is the only doubly-stochastic matrix commuting with A.
enum class Verdict { unique, non_unique };

enum class Prediction { equivalent, not_equivalent, unknown };

/// Graph-class zones. Assignment precedence is the declaration order of
/// regular_red, nonsimple, friendly, theorem_green, symmetric,
/// zone2_candidate, unresolved.
enum class Zone {
  friendly,
  theorem_green,
  zone2_candidate,
  regular_red,
  symmetric,
  nonsimple,
  unresolved,
};

constexpr std::string_view to_string(Verdict v) {
  return v == Verdict::unique ? "unique" : "non_unique";
}

constexpr std::string_view to_string(Prediction p) {
  switch (p) {
    case Prediction::equivalent: return "equivalent";
    case Prediction::not_equivalent: return "not_equivalent";
    case Prediction::unknown: break;
  }
  return "unknown";
}

constexpr std::string_view to_string(Zone z) {
  switch (z) {
    case Zone::friendly: return "FRIENDLY";
    case Zone::theorem_green: return "THEOREM_GREEN";
    case Zone::zone2_candidate: return "ZONE2_CANDIDATE";
    case Zone::regular_red: return "REGULAR_RED";
    case Zone::symmetric: return "SYMMETRIC";
    case Zone::nonsimple: return "NONSIMPLE";
    case Zone::unresolved: break;
  }
  return "UNRESOLVED";
}

inline std::optional<Verdict> parse_verdict(std::string_view s) {
  if (s == "unique") return Verdict::unique;
  if (s == "non_unique") return Verdict::non_unique;
  return std::nullopt;
}

inline std::optional<Zone> parse_zone(std::string_view s) {
  for (Zone z : {Zone::friendly, Zone::theorem_green, Zone::zone2_candidate,
                 Zone::regular_red, Zone::symmetric, Zone::nonsimple,
                 Zone::unresolved})
    if (to_string(z) == s) return z;
  return std::nullopt;
}

}  // namespace gmrelax
