#include "ctmhd/fv_solver.hpp"

#include <omp.h>

#include <limits>
#include <string>

#include "fv_kernels.hpp"

namespace ctmhd {

TransverseMode parse_transverse(std::string_view name) {
  if (name == "none") return TransverseMode::none;
  if (name == "transverse" || name == "single") return TransverseMode::transverse;
  if (name == "double") return TransverseMode::double_transverse;
  throw ConfigError("unknown transverse mode '" + std::string(name) + "'");
}

std::string to_string(TransverseMode mode) {
  switch (mode) {
    case TransverseMode::none: return "none";
    case TransverseMode::transverse: return "transverse";
    case TransverseMode::double_transverse: return "double";
  }
  return "?";
}

double suggest_dt(const Field& q, double cfl_target, double gamma) {
  const GridSpec& g = q.spec();
  double rate = 0.0;
  int bad = 0;
#pragma omp parallel for reduction(max : rate) reduction(+ : bad) schedule(static)
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const State s = detail::load(q, i, j, k);
        if (!(s[RHO] > 0.0)) {
          ++bad;
          continue;
        }
        for (int d = 0; d < 3; ++d)
          if (g.n(d) > 1) rate = std::max(rate, max_signal_speed(s, d, gamma) / g.d(d));
      }
  if (bad > 0) {
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
          if (!(q(RHO, i, j, k) > 0.0)) throw AdmissibilityError("suggest_dt: non-positive density", {i, j, k});
  }
  if (!(rate > 0.0)) return std::numeric_limits<double>::infinity();
  return cfl_target / rate;
}

namespace detail {

void finish_step(Field& qstar, const std::array<FaceFlux, 3>& g, const std::array<bool, 3>& active, double dt,
                 double gamma, StepStats& stats) {
  const GridSpec& s = qstar.spec();
  const std::size_t cs = qstar.component_size();
  double* p = qstar.values().data();
  for (int d = 0; d < 3; ++d) {
    if (!active[d]) continue;
    const double dtdx = dt / s.d(d);
    const FaceFlux& f = g[d];
#pragma omp parallel for schedule(static)
    for (int k = 0; k < s.nz; ++k)
      for (int j = 0; j < s.ny; ++j)
        for (int i = 0; i < s.nx; ++i) {
          const State& lo = f.at(i, j, k);
          const State& hi = d == 0 ? f.at(i + 1, j, k) : (d == 1 ? f.at(i, j + 1, k) : f.at(i, j, k + 1));
          const std::size_t o = qstar.offset(i, j, k);
          for (int m = 0; m < kNumVars; ++m) p[m * cs + o] -= dtdx * (hi[m] - lo[m]);
        }
  }
  double min_rho = std::numeric_limits<double>::infinity();
  double min_press = std::numeric_limits<double>::infinity();
  for (int k = 0; k < s.nz; ++k)
    for (int j = 0; j < s.ny; ++j)
      for (int i = 0; i < s.nx; ++i) {
        const State q = load(qstar, i, j, k);
        for (double v : q)
          if (!std::isfinite(v)) throw AdmissibilityError("mhd_step: non-finite state", {i, j, k});
        if (!(q[RHO] > 0.0)) throw AdmissibilityError("mhd_step: non-positive density", {i, j, k});
        min_rho = std::min(min_rho, q[RHO]);
        min_press = std::min(min_press, pressure(q, gamma));
      }
  stats.min_rho = min_rho;
  stats.min_press = min_press;
}

}  // namespace detail

namespace {

using detail::FaceFlux;
using detail::Interface;

struct Sweep {
  const Field& q;
  Field& qstar;
  std::array<FaceFlux, 3>& g;
  const FvOptions& opt;
  const std::array<bool, 3>& active;
  double dt;
  int d, e1, e2;
};

struct Scratch {
  std::vector<State> q, f, amdq, apdq, cq;
  std::vector<Interface> w;
  Eigensystem eig, te[2];
  void resize(int n) {
    q.resize(n + 4);
    f.resize(n + 4);
    w.resize(n + 3);
    amdq.resize(n + 3);
    apdq.resize(n + 3);
    cq.resize(n + 3);
  }
};

// One pencil along d at transverse position (a, b); returns the local Courant maximum.
double sweep_pencil(const Sweep& sw, int a, int b, Scratch& sc) {
  const GridSpec& gs = sw.q.spec();
  const int d = sw.d, n = gs.n(d);
  const double dtdx = sw.dt / gs.d(d);
  const double gamma = sw.opt.gamma;
  auto cell = [&](int p, int ta, int tb) {
    std::array<int, 3> c{};
    c[d] = p;
    c[sw.e1] = ta;
    c[sw.e2] = tb;
    return c;
  };

  // States and fluxes for cells -2..n+1 at buffer index p+2.
  {
    const auto c0 = cell(0, a, b);
    const std::size_t base = sw.q.offset(c0[0], c0[1], c0[2]);
    const std::ptrdiff_t st = sw.q.stride(d);
    const std::size_t cs = sw.q.component_size();
    const double* src = sw.q.values().data();
    for (int p = -2; p <= n + 1; ++p) {
      State& s = sc.q[p + 2];
      const std::size_t o = base + p * st;
      for (int m = 0; m < kNumVars; ++m) s[m] = src[m * cs + o];
      sc.f[p + 2] = flux(s, d, gamma);
    }
  }
  // Interfaces -1..n+1 at buffer index f+1; face f separates cells f-1 and f.
  for (int f = -1; f <= n + 1; ++f)
    detail::solve_interface(sc.q[f + 1], sc.q[f + 2], sc.f[f + 1], sc.f[f + 2], d, gamma, sc.eig, sc.w[f + 1]);

  const bool interior = (a >= 0 && a < gs.n(sw.e1) && b >= 0 && b < gs.n(sw.e2));
  double courant = 0.0;
  for (int f = 0; f <= n; ++f) {
    const Interface& w = sc.w[f + 1];
    if (interior)
      for (double s : w.s) courant = std::max(courant, std::abs(s) * dtdx);
    detail::fluctuations(w, sc.amdq[f + 1], sc.apdq[f + 1]);
    if (sw.opt.second_order)
      detail::correction(sc.w[f], w, sc.w[f + 2], dtdx, sw.opt, sc.cq[f + 1]);
    else
      sc.cq[f + 1].fill(0.0);
  }

  if (interior) {
    const std::size_t cs = sw.qstar.component_size();
    double* dst = sw.qstar.values().data();
    for (int i = 0; i < n; ++i) {
      const auto c = cell(i, a, b);
      const std::size_t o = sw.qstar.offset(c[0], c[1], c[2]);
      const State& ap = sc.apdq[i + 1];
      const State& am = sc.amdq[i + 2];
      for (int m = 0; m < kNumVars; ++m) dst[m * cs + o] -= dtdx * (ap[m] + am[m]);
    }
    if (sw.opt.second_order) {
      FaceFlux& gd = sw.g[d];
      for (int f = 0; f <= n; ++f) {
        const auto c = cell(f, a, b);
        gd.add(c[0], c[1], c[2], 0.5, sc.cq[f + 1]);
      }
    }
  }

  if (sw.opt.transverse == TransverseMode::none) return courant;
  const int tax[2] = {sw.e1, sw.e2};
  const bool tact[2] = {sw.active[sw.e1], sw.active[sw.e2]};
  const bool dbl = sw.opt.transverse == TransverseMode::double_transverse && tact[0] && tact[1];
  State delta, tm, tp, um, up;
  for (int i = 0; i < n; ++i) {
    const State& qc = sc.q[i + 2];
    for (int m = 0; m < kNumVars; ++m)
      delta[m] = sc.apdq[i + 1][m] + sc.amdq[i + 2][m] - sc.cq[i + 1][m] + sc.cq[i + 2][m];
    for (int t = 0; t < 2; ++t)
      if (tact[t]) eigensystem(qc, qc, tax[t], gamma, sc.te[t]);
    for (int t = 0; t < 2; ++t) {
      if (!tact[t]) continue;
      const int e = tax[t], eo = tax[1 - t];
      detail::transverse_split(sc.te[t], delta, tm, tp);
      auto col = cell(i, a, b);
      FaceFlux& ge = sw.g[e];
      ge.add(col[0], col[1], col[2], -0.5 * dtdx, tm);
      col[e] += 1;
      ge.add(col[0], col[1], col[2], -0.5 * dtdx, tp);
      if (!dbl) continue;
      const double base = dtdx * sw.dt / gs.d(e) / 6.0;
      FaceFlux& gh = sw.g[eo];
      for (int sigma = -1; sigma <= 1; sigma += 2) {
        detail::transverse_split(sc.te[1 - t], sigma < 0 ? tm : tp, um, up);
        const double coef = sigma * base;
        for (int tau = 0; tau < 2; ++tau) {
          const State& u = tau == 0 ? um : up;
          auto src = cell(i, a, b);
          src[eo] += tau;
          auto dstc = src;
          dstc[e] += sigma;
          gh.add(dstc[0], dstc[1], dstc[2], -coef, u);
          gh.add(src[0], src[1], src[2], coef, u);
        }
      }
    }
  }
  return courant;
}

}  // namespace

FvResult mhd_step(const Field& qn, double dt, const BoundarySpec& bc, const FvOptions& opt) {
  Field q = qn;
  fill_ghost(q, bc);
  const GridSpec& gs = q.spec();
  std::array<bool, 3> active{};
  std::array<FaceFlux, 3> g;
  for (int d = 0; d < 3; ++d) {
    active[d] = axis_active(gs, bc, d);
    if (active[d]) g[d] = FaceFlux(gs, d);
  }
  FvResult res{q, {}};
  const bool trans = opt.transverse != TransverseMode::none;

  double courant = 0.0;
  for (int d = 0; d < 3; ++d) {
    if (!active[d]) continue;
    const int e1 = (d + 1) % 3, e2 = (d + 2) % 3;
    const Sweep sw{q, res.qstar, g, opt, active, dt, d, e1, e2};
    // Transverse ghost pencils feed interior faces; colouring keeps their writes disjoint.
    const bool x1 = trans && active[e1], x2 = trans && active[e2];
    const int lo1 = x1 ? -1 : 0, hi1 = gs.n(e1) + (x1 ? 0 : -1);
    const int lo2 = x2 ? -1 : 0, hi2 = gs.n(e2) + (x2 ? 0 : -1);
    const int m1 = x1 ? 3 : 1, m2 = x2 ? 3 : 1;
    for (int c1 = 0; c1 < m1; ++c1)
      for (int c2 = 0; c2 < m2; ++c2) {
        std::vector<std::pair<int, int>> pencils;
        for (int b = lo2; b <= hi2; ++b)
          for (int a = lo1; a <= hi1; ++a)
            if (((a - lo1) % m1) == c1 && ((b - lo2) % m2) == c2) pencils.emplace_back(a, b);
        const int np = int(pencils.size());
#pragma omp parallel reduction(max : courant)
        {
          Scratch sc;
          sc.resize(gs.n(d));
#pragma omp for schedule(static)
          for (int p = 0; p < np; ++p)
            courant = std::max(courant, sweep_pencil(sw, pencils[p].first, pencils[p].second, sc));
        }
      }
  }
  res.stats.max_courant = courant;
  if (courant > 1.0) throw StepRejected("mhd_step: Courant number " + std::to_string(courant) + " > 1", courant);
  detail::finish_step(res.qstar, g, active, dt, opt.gamma, res.stats);
  return res;
}

}  // namespace ctmhd
