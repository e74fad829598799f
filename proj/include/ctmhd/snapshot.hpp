#pragma once

#include <string>
#include <vector>

#include "ctmhd/ct.hpp"

namespace ctmhd {

// Text header followed by little-endian float64 blocks, one per variable, x-fastest.
struct Snapshot {
  GridSpec grid;
  double time = 0.0;
  std::vector<std::string> names;
  std::vector<std::vector<double>> data;

  const std::vector<double>& variable(const std::string& name) const;
};

Snapshot make_snapshot(const CtState& state);
void write_snapshot(const std::string& path, const Snapshot& snap);
Snapshot read_snapshot(const std::string& path);

}  // namespace ctmhd
