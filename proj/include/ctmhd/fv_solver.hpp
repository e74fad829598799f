#pragma once

#include "ctmhd/grid.hpp"
#include "ctmhd/limiter.hpp"
#include "ctmhd/mhd.hpp"

namespace ctmhd {

enum class TransverseMode { none, transverse, double_transverse };

TransverseMode parse_transverse(std::string_view name);
std::string to_string(TransverseMode mode);

struct FvOptions {
  LimiterKind limiter = LimiterKind::mc;
  TransverseMode transverse = TransverseMode::double_transverse;
  bool second_order = true;   // false drops the correction fluxes
  bool entropy_fix = false;   // Harten smoothing of |s| in the correction fluxes
  double entropy_delta = 0.1; // smoothing width as a fraction of the local fast speed
  double gamma = kGamma;
};

struct StepStats {
  double max_courant = 0.0;
  double min_rho = 0.0;
  double min_press = 0.0;
};

struct FvResult {
  Field qstar;
  StepStats stats;
};

// One unsplit wave-propagation step. Ghosts of qn are refilled internally.
// Throws StepRejected if the realized Courant number exceeds 1 and
// AdmissibilityError if a density turns non-positive.
FvResult mhd_step(const Field& qn, double dt, const BoundarySpec& bc, const FvOptions& opt);

// Serial whole-grid version of the same update, kept for cross-checking.
FvResult mhd_step_reference(const Field& qn, double dt, const BoundarySpec& bc, const FvOptions& opt);

// cfl_target / max over cells and axes of (|u_d| + c_f,d)/dx_d. Axes with one cell are ignored.
double suggest_dt(const Field& q, double cfl_target, double gamma = kGamma);

}  // namespace ctmhd
