#pragma once

#include <string>
#include <string_view>

namespace ctmhd {

// `none` applies no limiting (phi = 1, Lax-Wendroff corrections).
enum class LimiterKind { minmod, mc, superbee, vanleer, none };

double limiter_phi(double theta, LimiterKind kind);

LimiterKind parse_limiter(std::string_view name);
std::string to_string(LimiterKind kind);

}  // namespace ctmhd
