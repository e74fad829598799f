#include "ctmhd/limiter.hpp"

#include <algorithm>
#include <cmath>

#include "ctmhd/errors.hpp"

namespace ctmhd {

double limiter_phi(double theta, LimiterKind kind) {
  switch (kind) {
    case LimiterKind::minmod:
      return std::max(0.0, std::min(1.0, theta));
    case LimiterKind::mc:
      return std::max(0.0, std::min({0.5 * (1.0 + theta), 2.0, 2.0 * theta}));
    case LimiterKind::superbee:
      return std::max({0.0, std::min(1.0, 2.0 * theta), std::min(2.0, theta)});
    case LimiterKind::vanleer:
      return (theta + std::abs(theta)) / (1.0 + std::abs(theta));
    case LimiterKind::none:
      return 1.0;
  }
  return 0.0;
}

LimiterKind parse_limiter(std::string_view name) {
  if (name == "minmod") return LimiterKind::minmod;
  if (name == "mc") return LimiterKind::mc;
  if (name == "superbee") return LimiterKind::superbee;
  if (name == "vanleer") return LimiterKind::vanleer;
  if (name == "none") return LimiterKind::none;
  throw ConfigError("unknown limiter '" + std::string(name) + "'");
}

std::string to_string(LimiterKind kind) {
  switch (kind) {
    case LimiterKind::minmod: return "minmod";
    case LimiterKind::mc: return "mc";
    case LimiterKind::superbee: return "superbee";
    case LimiterKind::vanleer: return "vanleer";
    case LimiterKind::none: return "none";
  }
  return "?";
}

}  // namespace ctmhd
