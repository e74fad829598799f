#include <algorithm>
#include <cmath>

#include "ctmhd/potential.hpp"
#include "potential_rows.hpp"

namespace ctmhd {

namespace {

// Cell-by-cell version of one sub-problem, indexing the fields directly.
void substep_reference(PotentialField& A, const Field& u, double dtau, double dt, int d, const PotentialOptions& opt,
                       const BoundarySpec& bc) {
  const GridSpec& g = A.a.spec();
  detail::check_courant(u, d, dtau);
  const double nu = dtau / g.d(d);
  const Field old = A.a;
  auto at = [d](const Field& f, int c, int i, int j, int k, int s) {
    int x[3] = {i, j, k};
    x[d] += s;
    return f(c, x[0], x[1], x[2]);
  };
  for (int c = 0; c < 3; ++c) {
    if (c == d) continue;
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          const double ui = u(d, i, j, k);
          const double am = at(old, c, i, j, k, -1), a0 = old(c, i, j, k), ap = at(old, c, i, j, k, 1);
          const double wl = a0 - am, wr = ap - a0;
          double upd = std::max(ui, 0.0) * wl + std::min(ui, 0.0) * wr;
          if (ui != 0.0) {
            const int s = ui > 0.0 ? -1 : 1;
            const double dw = wr - wl;
            const double dwu = at(old, c, i, j, k, s + 1) - 2.0 * at(old, c, i, j, k, s) + at(old, c, i, j, k, s - 1);
            const double phi = limiter_phi(dw != 0.0 ? dwu / dw : 0.0, opt.limiter);
            if (phi != 0.0) {
              const double sgn = ui > 0.0 ? 1.0 : -1.0;
              const double uf_hi = 0.5 * (ui + at(u, d, i, j, k, 1));
              const double uf_lo = 0.5 * (at(u, d, i, j, k, -1) + ui);
              upd += 0.5 * std::abs(ui) * phi * ((1.0 - nu * uf_hi * sgn) * wr - (1.0 - nu * uf_lo * sgn) * wl);
            }
          }
          A.a(c, i, j, k) = a0 - nu * upd;
        }
  }
  A.fill(bc);
  const double coef = 2.0 * (dtau / dt) * opt.diffusion.nu;
  const double h = 0.5 * dtau / (2.0 * g.d(d));
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double s = 0.0;
        for (int c = 0; c < 3; ++c) {
          if (c == d) continue;
          s += u(c, i, j, k) * ((at(old, c, i, j, k, 1) - at(old, c, i, j, k, -1)) +
                                (at(A.a, c, i, j, k, 1) - at(A.a, c, i, j, k, -1)));
        }
        const double am = at(old, d, i, j, k, -1), a0 = old(d, i, j, k), ap = at(old, d, i, j, k, 1);
        double v = a0 + h * s;
        if (coef > 0.0) v += coef * smoothness_alpha(am, a0, ap, opt.diffusion.eps) * (am - 2.0 * a0 + ap);
        A.a(d, i, j, k) = v;
      }
  A.fill(bc);
}

}  // namespace

PotentialField strang_step_reference(const PotentialField& A, const VelocityField& u, double dt,
                                     const PotentialOptions& opt, const BoundarySpec& bc) {
  opt.diffusion.validate();
  PotentialField out = A;
  out.fill(bc);
  const GridSpec& g = A.a.spec();
  const int order[5] = {0, 1, 2, 1, 0};
  const double frac[5] = {0.5, 0.5, 1.0, 0.5, 0.5};
  for (int s = 0; s < 5; ++s)
    if (axis_active(g, bc, order[s])) substep_reference(out, u.u, frac[s] * dt, dt, order[s], opt, bc);
  return out;
}

}  // namespace ctmhd
