#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "ctmhd/ct.hpp"

namespace ctmhd {

enum class ReferenceMode { none, one_d, scalar_a3 };

struct RunConfig {
  std::string problem = "alfven25";  // alfven, alfven25, shock_tube, orszag_tang, cloud_shock
  int nx = 64, ny = 128, nz = 1;
  int scale = 1;        // shock_tube mesh multiplier
  bool quarter = true;  // cloud_shock domain
  std::optional<double> phi, theta;
  std::optional<double> end_time;
  double cfl = 0.8;
  std::optional<LimiterKind> limiter;
  TransverseMode transverse = TransverseMode::double_transverse;
  bool second_order = true;
  bool entropy_fix = false;
  EnergyOption energy = EnergyOption::conserve_total;
  std::optional<double> nu;
  double eps = 1e-8;
  double gamma = kGamma;
  std::vector<double> output_times;  // empty: problem default
  std::string output_dir = "out";
  ReferenceMode reference = ReferenceMode::none;
  int reference_cells = 10000;
  int max_steps = 0;  // 0: run to end_time
  bool write_snapshots = true;
  std::uint64_t seed = 0;

  // Applies one `key = value` setting; throws ConfigError on unknown keys or bad values.
  void set(const std::string& key, const std::string& value);
  void validate() const;
};

// Flat `key = value` lines; `[section]` headers and `#` comments are allowed.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

}  // namespace ctmhd
