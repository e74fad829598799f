#include "ctmhd/ct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ctmhd {

EnergyOption parse_energy_option(std::string_view name) {
  if (name == "1" || name == "conserve_total") return EnergyOption::conserve_total;
  if (name == "2" || name == "preserve_pressure") return EnergyOption::preserve_pressure;
  throw ConfigError("unknown energy option '" + std::string(name) + "'");
}

std::string to_string(EnergyOption opt) {
  return opt == EnergyOption::conserve_total ? "conserve_total" : "preserve_pressure";
}

Field curl_centered(const PotentialField& A) {
  const Field& a = A.a;
  const GridSpec& g = a.spec();
  Field B(g, 3);
  const double h[3] = {0.5 / g.dx, 0.5 / g.dy, 0.5 / g.dz};
  const std::ptrdiff_t st[3] = {a.stride(0), a.stride(1), a.stride(2)};
  const double* A1 = a.component(0);
  const double* A2 = a.component(1);
  const double* A3 = a.component(2);
  auto D = [&](const double* f, std::size_t o, int d) { return (f[o + st[d]] - f[o - st[d]]) * h[d]; };
#pragma omp parallel for collapse(2) schedule(static)
  for (int k = -1; k <= g.nz; ++k)
    for (int j = -1; j <= g.ny; ++j)
      for (int i = -1; i <= g.nx; ++i) {
        const std::size_t o = a.offset(i, j, k);
        B.component(0)[o] = D(A3, o, 1) - D(A2, o, 2);
        B.component(1)[o] = D(A1, o, 2) - D(A3, o, 0);
        B.component(2)[o] = D(A2, o, 0) - D(A1, o, 1);
      }
  return B;
}

Field discrete_divergence(const Field& B) {
  const GridSpec& g = B.spec();
  Field div(g, 1);
  const double h[3] = {0.5 / g.dx, 0.5 / g.dy, 0.5 / g.dz};
#pragma omp parallel for collapse(2) schedule(static)
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const std::size_t o = B.offset(i, j, k);
        double s = 0.0;
        for (int d = 0; d < 3; ++d) {
          const double* f = B.component(d);
          s += (f[o + B.stride(d)] - f[o - B.stride(d)]) * h[d];
        }
        div(0, i, j, k) = s;
      }
  return div;
}

DivergenceReport divergence_report(const Field& B) {
  const Field div = discrete_divergence(B);
  const GridSpec& g = B.spec();
  DivergenceReport r;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        r.max_div = std::max(r.max_div, std::abs(div(0, i, j, k)));
        double b2 = 0.0;
        for (int c = 0; c < 3; ++c) b2 += B(c, i, j, k) * B(c, i, j, k);
        r.max_b = std::max(r.max_b, std::sqrt(b2));
      }
  r.scaled = r.max_b > 0.0 ? r.max_div * g.min_spacing() / r.max_b : r.max_div;
  return r;
}

VelocityField half_time_velocity(const Field& qn, const Field& qnp1) {
  VelocityField v{Field(qn.spec(), 3)};
  const std::size_t cs = qn.component_size();
  const double* a = qn.values().data();
  const double* b = qnp1.values().data();
  double* u = v.u.values().data();
  for (std::size_t o = 0; o < cs; ++o) {
    const double ra = a[RHO * cs + o], rb = b[RHO * cs + o];
    if (!(ra > 0.0) || !(rb > 0.0)) throw AdmissibilityError("half_time_velocity: non-positive density", {-1, -1, -1});
    for (int c = 0; c < 3; ++c) u[c * cs + o] = 0.5 * (a[(MX + c) * cs + o] / ra + b[(MX + c) * cs + o] / rb);
  }
  return v;
}

void install_field(Field& q, const Field& B) {
  const GridSpec& g = q.spec();
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) q(BX + c, i, j, k) = B(c, i, j, k);
}

namespace {

CtStepReport attempt(CtState& s, double dt, const CtConfig& cfg) {
  CtStepReport rep;
  FvResult fv = cfg.use_reference ? mhd_step_reference(s.q, dt, cfg.q_bc, cfg.fv) : mhd_step(s.q, dt, cfg.q_bc, cfg.fv);
  Field qn = s.q;
  fill_ghost(qn, cfg.q_bc);
  fill_ghost(fv.qstar, cfg.q_bc);
  const VelocityField u = half_time_velocity(qn, fv.qstar);

  PotentialField A;
  if (cfg.mode == PotentialMode::scalar_a3)
    A = scalar_a3_step(s.A, u, dt, cfg.potential.limiter, cfg.a_bc);
  else if (cfg.use_reference)
    A = strang_step_reference(s.A, u, dt, cfg.potential, cfg.a_bc);
  else
    A = strang_step(s.A, u, dt, cfg.potential, cfg.a_bc);

  Field B = curl_centered(A);
  Field& q = fv.qstar;
  const GridSpec& g = q.spec();
  if (cfg.mode == PotentialMode::scalar_a3) {
    // B3 keeps the base-scheme value; only the in-plane field comes from A3.
    for (int k = -1; k <= g.nz; ++k)
      for (int j = -1; j <= g.ny; ++j)
        for (int i = -1; i <= g.nx; ++i) {
          B(0, i, j, k) = (A.a(2, i, j + 1, k) - A.a(2, i, j - 1, k)) / (2.0 * g.dy);
          B(1, i, j, k) = -(A.a(2, i + 1, j, k) - A.a(2, i - 1, j, k)) / (2.0 * g.dx);
          B(2, i, j, k) = q(BZ, i, j, k);
        }
  }
  rep.min_rho = std::numeric_limits<double>::infinity();
  rep.min_press = std::numeric_limits<double>::infinity();
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        if (cfg.energy == EnergyOption::preserve_pressure) {
          double d = 0.0;
          for (int c = 0; c < 3; ++c) d += B(c, i, j, k) * B(c, i, j, k) - q(BX + c, i, j, k) * q(BX + c, i, j, k);
          q(ENER, i, j, k) += 0.5 * d;
        }
        for (int c = 0; c < 3; ++c) q(BX + c, i, j, k) = B(c, i, j, k);
        State st;
        for (int m = 0; m < kNumVars; ++m) st[m] = q(m, i, j, k);
        rep.min_rho = std::min(rep.min_rho, st[RHO]);
        rep.min_press = std::min(rep.min_press, pressure(st, cfg.fv.gamma));
      }
  rep.div = divergence_report(B);
  rep.fv = fv.stats;
  rep.dt = dt;
  s.q = std::move(q);
  s.A = std::move(A);
  s.time += dt;
  return rep;
}

}  // namespace

CtStepReport ct_advance(CtState& s, double dt, const CtConfig& cfg) {
  for (int retry = 0;; ++retry) {
    try {
      CtStepReport rep = attempt(s, dt, cfg);
      rep.retries = retry;
      return rep;
    } catch (const StepRejected& e) {
      if (retry >= cfg.max_retries) throw;
      dt *= 0.5;
    }
  }
}

}  // namespace ctmhd
