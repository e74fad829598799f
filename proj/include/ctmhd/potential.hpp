#pragma once

#include <span>

#include "ctmhd/grid.hpp"
#include "ctmhd/limiter.hpp"

namespace ctmhd {

// Cell-centred vector potential; `linear` holds the gradient of its affine part
// so wrapped ghost cells can be shifted consistently.
struct PotentialField {
  Field a;  // 3 components
  AffinePart linear;

  void fill(const BoundarySpec& bc) { fill_ghost(a, bc, &linear); }
};

struct VelocityField {
  Field u;  // 3 components, ghosts filled
};

struct DiffusionConfig {
  double nu = 0.0;
  double eps = 1e-8;
  void validate() const;
};

struct PotentialOptions {
  LimiterKind limiter = LimiterKind::mc;
  DiffusionConfig diffusion;
};

// L1(dt/2) L2(dt/2) L3(dt) L2(dt/2) L1(dt/2); inactive axes are skipped.
// Throws StepRejected if |u| dtau/dx exceeds 1 in any substep.
PotentialField strang_step(const PotentialField& A, const VelocityField& u, double dt, const PotentialOptions& opt,
                           const BoundarySpec& bc);
PotentialField strang_step_reference(const PotentialField& A, const VelocityField& u, double dt,
                                     const PotentialOptions& opt, const BoundarySpec& bc);

// Sub-problem `axis` over dtau. A must be ghost-filled on entry; it is on exit too.
void potential_substep(PotentialField& A, const VelocityField& u, double dtau, double dt, int axis,
                       const PotentialOptions& opt, const BoundarySpec& bc);

// Transport of A3 alone in the x-y plane (2.5D reference mode): L1(dt/2) L2(dt) L1(dt/2).
PotentialField scalar_a3_step(const PotentialField& A, const VelocityField& u, double dt, LimiterKind limiter,
                              const BoundarySpec& bc);

// Row kernels. Input rows carry two ghost cells on each side (length n+4); outputs have length n.
void hyperbolic_row(std::span<const double> a, std::span<const double> u, double dtau_dx, LimiterKind limiter,
                    std::span<double> out);
double smoothness_alpha(double am, double a0, double ap, double eps);
// star[i] += coef * alpha[i] * (old[i-1] - 2 old[i] + old[i+1]); old has ghosts, star and alpha do not.
void diffusion_row(std::span<double> star, std::span<const double> old, std::span<const double> alpha, double coef);

// Field-level forms of the sub-problem pieces (single-component, ghost-filled inputs).
Field hyperbolic_solve_1d(const Field& a, const Field& u, double dtau, int axis, LimiterKind limiter);
Field weakly_hyperbolic_solve(const Field& a1_old, const Field& a2_old, const Field& a2_new, const Field& a3_old,
                              const Field& a3_new, const Field& u2, const Field& u3, double dtau, int axis);
Field apply_diffusion(const Field& a_star, const Field& a_old, double dtau, double dt, const DiffusionConfig& diff,
                      int axis);

}  // namespace ctmhd
