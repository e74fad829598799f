#pragma once

#include "ctmhd/fv_solver.hpp"
#include "ctmhd/potential.hpp"

namespace ctmhd {

enum class EnergyOption { conserve_total, preserve_pressure };

EnergyOption parse_energy_option(std::string_view name);
std::string to_string(EnergyOption opt);

enum class PotentialMode { full, scalar_a3 };

struct CtConfig {
  FvOptions fv;
  PotentialOptions potential;
  EnergyOption energy = EnergyOption::conserve_total;
  PotentialMode mode = PotentialMode::full;
  BoundarySpec q_bc;
  BoundarySpec a_bc = BoundarySpec::uniform(BcKind::extrapolate1);
  int max_retries = 10;
  bool use_reference = false;  // serial reference kernels instead of the parallel ones
};

struct CtState {
  Field q;
  PotentialField A;
  double time = 0.0;
};

struct DivergenceReport {
  double max_div = 0.0;
  double max_b = 0.0;
  double scaled = 0.0;  // max_div / (max_b / min spacing)
};

struct CtStepReport {
  double dt = 0.0;
  int retries = 0;
  StepStats fv;
  DivergenceReport div;
  double min_rho = 0.0;
  double min_press = 0.0;
};

// Advances s by one CT step of size dt (halved on rejection, at most cfg.max_retries times).
CtStepReport ct_advance(CtState& s, double dt, const CtConfig& cfg);

// Centred curl of a ghost-filled potential, valid on the interior and the first ghost layer.
Field curl_centered(const PotentialField& A);
// Centred divergence on the interior of a field whose first ghost layer is valid.
Field discrete_divergence(const Field& B);
DivergenceReport divergence_report(const Field& B);

// u = (m^n/rho^n + m^{n+1}/rho^{n+1})/2 on every cell including ghosts.
VelocityField half_time_velocity(const Field& qn, const Field& qnp1);

// B of the conserved field replaced by curl(A) on the interior.
void install_field(Field& q, const Field& B);

}  // namespace ctmhd
