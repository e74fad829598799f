#include "ctmhd/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "potential_rows.hpp"

namespace ctmhd {

void DiffusionConfig::validate() const {
  if (!(nu >= 0.0 && nu <= 0.5)) throw ConfigError("diffusion: nu must lie in [0, 1/2]");
  if (!(eps > 0.0)) throw ConfigError("diffusion: eps must be > 0");
}

void hyperbolic_row(std::span<const double> a, std::span<const double> u, double nu, LimiterKind limiter,
                    std::span<double> out) {
  const int n = int(out.size());
  const double* A = a.data() + 2;
  const double* U = u.data() + 2;
  for (int i = 0; i < n; ++i) {
    const double ui = U[i];
    const double wl = A[i] - A[i - 1], wr = A[i + 1] - A[i];
    double upd = std::max(ui, 0.0) * wl + std::min(ui, 0.0) * wr;
    if (ui != 0.0) {
      const double dw = wr - wl;
      double theta = 0.0;
      if (dw != 0.0) {
        const int I = ui > 0.0 ? i - 1 : i + 1;
        theta = (A[I + 1] - 2.0 * A[I] + A[I - 1]) / dw;
      }
      const double phi = limiter_phi(theta, limiter);
      if (phi != 0.0) {
        const double sgn = ui > 0.0 ? 1.0 : -1.0;
        const double au = std::abs(ui);
        const double up = 0.5 * (U[i] + U[i + 1]), um = 0.5 * (U[i - 1] + U[i]);
        const double fm = 0.5 * au * (1.0 - nu * up * sgn) * wr * phi;
        const double fp = 0.5 * au * (1.0 - nu * um * sgn) * wl * phi;
        upd += fm - fp;
      }
    }
    out[i] = A[i] - nu * upd;
  }
}

double smoothness_alpha(double am, double a0, double ap, double eps) {
  const double dl = eps + (a0 - am) * (a0 - am);
  const double dr = eps + (ap - a0) * (ap - a0);
  // a_l/(a_l+a_r) with a = d^-2, written as a ratio to stay finite.
  const double q = dl / dr;
  const double wl = 1.0 / (1.0 + q * q);
  const double wr = 1.0 - wl;
  return std::max(std::abs(wl - 0.5), std::abs(wr - 0.5));
}

void diffusion_row(std::span<double> star, std::span<const double> old, std::span<const double> alpha, double coef) {
  const double* O = old.data() + 2;
  for (std::size_t i = 0; i < star.size(); ++i)
    star[i] += coef * alpha[i] * (O[i - 1] - 2.0 * O[i] + O[i + 1]);
}

namespace detail {

double max_courant(const Field& u, int axis, double dtau) {
  const GridSpec& g = u.spec();
  double c = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) c = std::max(c, std::abs(u(axis, i, j, k)));
  return c * dtau / g.d(axis);
}

void check_courant(const Field& u, int axis, double dtau) {
  const double c = max_courant(u, axis, dtau);
  if (c > 1.0) throw StepRejected("potential substep: Courant number " + std::to_string(c) + " > 1", c);
}

}  // namespace detail

namespace {

struct Pencil {
  int d, e1, e2;
  const GridSpec* g;
  std::array<int, 3> cell(int p, int a, int b) const {
    std::array<int, 3> c{};
    c[d] = p;
    c[e1] = a;
    c[e2] = b;
    return c;
  }
};

void gather(const Field& f, int comp, const Pencil& pc, int a, int b, std::vector<double>& row) {
  const int n = pc.g->n(pc.d);
  const auto c0 = pc.cell(0, a, b);
  const double* src = f.component(comp) + f.offset(c0[0], c0[1], c0[2]);
  const std::ptrdiff_t st = f.stride(pc.d);
  row.resize(n + 4);
  for (int p = -2; p <= n + 1; ++p) row[p + 2] = src[p * st];
}

void scatter(Field& f, int comp, const Pencil& pc, int a, int b, const std::vector<double>& row) {
  const auto c0 = pc.cell(0, a, b);
  double* dst = f.component(comp) + f.offset(c0[0], c0[1], c0[2]);
  const std::ptrdiff_t st = f.stride(pc.d);
  for (std::size_t p = 0; p < row.size(); ++p) dst[p * st] = row[p];
}

}  // namespace

void potential_substep(PotentialField& A, const VelocityField& u, double dtau, double dt, int d,
                       const PotentialOptions& opt, const BoundarySpec& bc) {
  const GridSpec& g = A.a.spec();
  detail::check_courant(u.u, d, dtau);
  const Pencil pc{d, (d + 1) % 3, (d + 2) % 3, &g};
  const int n = g.n(d), n1 = g.n(pc.e1), n2 = g.n(pc.e2);
  const double dx = g.d(d);
  const int adv[2] = {pc.e1, pc.e2};
  const Field old = A.a;

#pragma omp parallel
  {
    std::vector<double> row, vel, out(n);
#pragma omp for collapse(2) schedule(static)
    for (int b = 0; b < n2; ++b)
      for (int a = 0; a < n1; ++a) {
        gather(u.u, d, pc, a, b, vel);
        for (int c : adv) {
          gather(old, c, pc, a, b, row);
          hyperbolic_row(row, vel, dtau / dx, opt.limiter, out);
          scatter(A.a, c, pc, a, b, out);
        }
      }
  }
  A.fill(bc);

  const double coef = 2.0 * (dtau / dt) * opt.diffusion.nu;
#pragma omp parallel
  {
    std::vector<double> wold, cold[2], cnew[2], uc[2], star(n), alpha(n);
#pragma omp for collapse(2) schedule(static)
    for (int b = 0; b < n2; ++b)
      for (int a = 0; a < n1; ++a) {
        gather(old, d, pc, a, b, wold);
        for (int t = 0; t < 2; ++t) {
          gather(old, adv[t], pc, a, b, cold[t]);
          gather(A.a, adv[t], pc, a, b, cnew[t]);
          gather(u.u, adv[t], pc, a, b, uc[t]);
        }
        detail::weak_row(wold, cold, cnew, uc, dtau, dx, star);
        if (coef > 0.0) {
          for (int i = 0; i < n; ++i)
            alpha[i] = smoothness_alpha(wold[i + 1], wold[i + 2], wold[i + 3], opt.diffusion.eps);
          diffusion_row(star, wold, alpha, coef);
        }
        scatter(A.a, d, pc, a, b, star);
      }
  }
  A.fill(bc);
}

PotentialField strang_step(const PotentialField& A, const VelocityField& u, double dt, const PotentialOptions& opt,
                           const BoundarySpec& bc) {
  opt.diffusion.validate();
  PotentialField out = A;
  out.fill(bc);
  const GridSpec& g = A.a.spec();
  const int order[5] = {0, 1, 2, 1, 0};
  const double frac[5] = {0.5, 0.5, 1.0, 0.5, 0.5};
  for (int s = 0; s < 5; ++s) {
    const int d = order[s];
    if (!axis_active(g, bc, d)) continue;
    potential_substep(out, u, frac[s] * dt, dt, d, opt, bc);
  }
  return out;
}

PotentialField scalar_a3_step(const PotentialField& A, const VelocityField& u, double dt, LimiterKind limiter,
                              const BoundarySpec& bc) {
  PotentialField out = A;
  out.fill(bc);
  const GridSpec& g = A.a.spec();
  const int order[3] = {0, 1, 0};
  const double frac[3] = {0.5, 1.0, 0.5};
  for (int s = 0; s < 3; ++s) {
    const int d = order[s];
    if (!axis_active(g, bc, d)) continue;
    const double dtau = frac[s] * dt;
    detail::check_courant(u.u, d, dtau);
    const Pencil pc{d, (d + 1) % 3, (d + 2) % 3, &g};
    const Field old = out.a;
    const int n = g.n(d);
#pragma omp parallel
    {
      std::vector<double> row, vel, res(n);
#pragma omp for collapse(2) schedule(static)
      for (int b = 0; b < g.n(pc.e2); ++b)
        for (int a = 0; a < g.n(pc.e1); ++a) {
          gather(u.u, d, pc, a, b, vel);
          gather(old, 2, pc, a, b, row);
          hyperbolic_row(row, vel, dtau / g.d(d), limiter, res);
          scatter(out.a, 2, pc, a, b, res);
        }
    }
    out.fill(bc);
  }
  return out;
}

Field hyperbolic_solve_1d(const Field& a, const Field& u, double dtau, int axis, LimiterKind limiter) {
  const GridSpec& g = a.spec();
  const Pencil pc{axis, (axis + 1) % 3, (axis + 2) % 3, &g};
  Field out = a;
  std::vector<double> row, vel, res(g.n(axis));
  for (int b = 0; b < g.n(pc.e2); ++b)
    for (int c = 0; c < g.n(pc.e1); ++c) {
      gather(u, 0, pc, c, b, vel);
      for (int i = 2; i < int(vel.size()) - 2; ++i)
        if (std::abs(vel[i]) * dtau / g.d(axis) > 1.0)
          throw StepRejected("hyperbolic_solve_1d: Courant number > 1", std::abs(vel[i]) * dtau / g.d(axis));
      gather(a, 0, pc, c, b, row);
      hyperbolic_row(row, vel, dtau / g.d(axis), limiter, res);
      scatter(out, 0, pc, c, b, res);
    }
  return out;
}

Field weakly_hyperbolic_solve(const Field& a1_old, const Field& a2_old, const Field& a2_new, const Field& a3_old,
                              const Field& a3_new, const Field& u2, const Field& u3, double dtau, int axis) {
  const GridSpec& g = a1_old.spec();
  const Pencil pc{axis, (axis + 1) % 3, (axis + 2) % 3, &g};
  Field out = a1_old;
  std::vector<double> wold, cold[2], cnew[2], uc[2], star(g.n(axis));
  for (int b = 0; b < g.n(pc.e2); ++b)
    for (int c = 0; c < g.n(pc.e1); ++c) {
      gather(a1_old, 0, pc, c, b, wold);
      gather(a2_old, 0, pc, c, b, cold[0]);
      gather(a2_new, 0, pc, c, b, cnew[0]);
      gather(a3_old, 0, pc, c, b, cold[1]);
      gather(a3_new, 0, pc, c, b, cnew[1]);
      gather(u2, 0, pc, c, b, uc[0]);
      gather(u3, 0, pc, c, b, uc[1]);
      detail::weak_row(wold, cold, cnew, uc, dtau, g.d(axis), star);
      scatter(out, 0, pc, c, b, star);
    }
  return out;
}

Field apply_diffusion(const Field& a_star, const Field& a_old, double dtau, double dt, const DiffusionConfig& diff,
                      int axis) {
  diff.validate();
  if (dtau > dt) throw ConfigError("apply_diffusion: substep longer than the step");
  const GridSpec& g = a_star.spec();
  const Pencil pc{axis, (axis + 1) % 3, (axis + 2) % 3, &g};
  const int n = g.n(axis);
  Field out = a_star;
  std::vector<double> star, old, alpha(n);
  for (int b = 0; b < g.n(pc.e2); ++b)
    for (int c = 0; c < g.n(pc.e1); ++c) {
      gather(a_star, 0, pc, c, b, star);
      gather(a_old, 0, pc, c, b, old);
      for (int i = 0; i < n; ++i) alpha[i] = smoothness_alpha(old[i + 1], old[i + 2], old[i + 3], diff.eps);
      std::vector<double> inner(star.begin() + 2, star.end() - 2);
      diffusion_row(inner, old, alpha, 2.0 * (dtau / dt) * diff.nu);
      scatter(out, 0, pc, c, b, inner);
    }
  return out;
}

}  // namespace ctmhd
