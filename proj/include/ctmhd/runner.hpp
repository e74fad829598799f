#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ctmhd/config.hpp"
#include "ctmhd/problems.hpp"

namespace ctmhd {

struct DiagnosticsRow {
  int step = 0;
  double time = 0.0, dt = 0.0, courant = 0.0;
  double max_div = 0.0, max_b = 0.0, div_scaled = 0.0;
  double mass = 0.0;
  Vec3 momentum{};
  double momentum_l1 = 0.0;
  double energy = 0.0;
  double min_rho = 0.0, min_press = 0.0;
  int retries = 0;
};

struct RunResult {
  ProblemSetup setup;
  CtState state;
  std::vector<DiagnosticsRow> log;
  std::vector<std::string> snapshots;
  std::vector<double> snapshot_times;
  double wall_seconds = 0.0;
};

ProblemSetup make_setup(const RunConfig& cfg);
CtConfig make_ct_config(const RunConfig& cfg, const ProblemSetup& setup);

// Conservation sums and extremes over the interior of a conserved field.
DiagnosticsRow measure(const Field& q, double gamma);

// Time loop; writes snapshots, diagnostics.csv and final.snap under cfg.output_dir when write_files is set.
// `observer` sees every completed step.
RunResult run(const RunConfig& cfg, bool write_files = true,
              const std::function<void(const CtState&, const DiagnosticsRow&)>& observer = {});

struct ErrorNorms {
  double linf = 0.0;
  double l1 = 0.0;  // mean absolute difference
};
ErrorNorms error_norms(const Field& numeric, int cn, const Field& exact, int ce);

struct ConvergenceTable {
  std::vector<std::array<int, 3>> meshes;
  std::vector<std::array<double, 6>> errors;  // B1 B2 B3 A1 A2 A3
  std::vector<std::array<double, 6>> orders;  // between consecutive meshes; NaN when undefined
  double seconds = 0.0;
  std::string to_csv() const;
};

// Alfven errors of a finished state against the exact solution at its time.
std::array<double, 6> alfven_errors(const AlfvenSpec& spec, const CtState& state);
ConvergenceTable convergence(const RunConfig& cfg, const std::vector<std::array<int, 3>>& meshes);
// log2 ratios of consecutive error rows; "undefined" when either error is zero.
std::vector<std::array<double, 6>> observed_orders(const std::vector<std::array<double, 6>>& errors);

AlfvenSpec alfven_spec(const RunConfig& cfg);

// Scatter table columns: xi rho u_xi u_eta u_zeta p b_xi b_eta b_zeta.
struct ScatterTable {
  std::vector<std::array<double, 9>> rows;
  std::string to_csv() const;
};
ScatterTable shock_tube_scatter(const CtState& state, double gamma);
// Fine mesh-aligned solution of the shock-tube Riemann problem (base scheme only).
ScatterTable reference_1d(const RunConfig& cfg);

// Column `col` (1..8) of a scatter table interpolated linearly at xi.
double interpolate(const ScatterTable& t, int col, double xi);

}  // namespace ctmhd
