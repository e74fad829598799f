#include <limits>
#include <string>

#include "ctmhd/fv_solver.hpp"
#include "fv_kernels.hpp"

namespace ctmhd {

namespace {

using detail::FaceFlux;
using detail::Interface;

// Values stored on a box of integer coordinates.
template <class T>
struct Box {
  std::array<int, 3> lo{}, hi{};
  std::vector<T> v;
  Box(std::array<int, 3> l, std::array<int, 3> h) : lo(l), hi(h) {
    v.resize(std::size_t(h[0] - l[0] + 1) * (h[1] - l[1] + 1) * (h[2] - l[2] + 1));
  }
  T& operator()(const std::array<int, 3>& c) {
    return v[(std::size_t(c[2] - lo[2]) * (hi[1] - lo[1] + 1) + (c[1] - lo[1])) * (hi[0] - lo[0] + 1) +
             (c[0] - lo[0])];
  }
};

}  // namespace

FvResult mhd_step_reference(const Field& qn, double dt, const BoundarySpec& bc, const FvOptions& opt) {
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
  Eigensystem eig;

  for (int d = 0; d < 3; ++d) {
    if (!active[d]) continue;
    const double dtdx = dt / gs.d(d);
    std::array<int, 3> lo{}, hi{};
    for (int b = 0; b < 3; ++b) {
      if (b == d) {
        lo[b] = -1;
        hi[b] = gs.n(b) + 1;
      } else {
        const bool ext = trans && active[b];
        lo[b] = ext ? -1 : 0;
        hi[b] = ext ? gs.n(b) : gs.n(b) - 1;
      }
    }
    Box<Interface> waves(lo, hi);
    Box<State> amdq(lo, hi), apdq(lo, hi), cq(lo, hi);
    std::array<int, 3> c;
    for (c[2] = lo[2]; c[2] <= hi[2]; ++c[2])
      for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1])
        for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0]) {
          auto l = c;
          l[d] -= 1;
          const State ql = detail::load(q, l[0], l[1], l[2]);
          const State qr = detail::load(q, c[0], c[1], c[2]);
          detail::solve_interface(ql, qr, flux(ql, d, opt.gamma), flux(qr, d, opt.gamma), d, opt.gamma, eig,
                                  waves(c));
        }

    for (c[2] = lo[2]; c[2] <= hi[2]; ++c[2])
      for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1])
        for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0]) {
          if (c[d] < 0 || c[d] > gs.n(d)) continue;
          const Interface& w = waves(c);
          bool interior = true;
          for (int b = 0; b < 3; ++b)
            if (b != d && (c[b] < 0 || c[b] >= gs.n(b))) interior = false;
          if (interior)
            for (double s : w.s) courant = std::max(courant, std::abs(s) * dtdx);
          detail::fluctuations(w, amdq(c), apdq(c));
          cq(c).fill(0.0);
          if (opt.second_order) {
            auto m = c, p = c;
            m[d] -= 1;
            p[d] += 1;
            detail::correction(waves(m), w, waves(p), dtdx, opt, cq(c));
          }
        }

    // First-order update and normal correction fluxes on the interior.
    for (int k = 0; k < gs.nz; ++k)
      for (int j = 0; j < gs.ny; ++j)
        for (int i = 0; i < gs.nx; ++i) {
          std::array<int, 3> f{i, j, k}, fp{i, j, k};
          fp[d] += 1;
          for (int m = 0; m < kNumVars; ++m)
            res.qstar(m, i, j, k) -= dtdx * (apdq(f)[m] + amdq(fp)[m]);
        }
    if (opt.second_order)
      for (c[2] = 0; c[2] < gs.n(2) + (d == 2); ++c[2])
        for (c[1] = 0; c[1] < gs.n(1) + (d == 1); ++c[1])
          for (c[0] = 0; c[0] < gs.n(0) + (d == 0); ++c[0]) g[d].add(c[0], c[1], c[2], 0.5, cq(c));

    if (!trans) continue;
    // Transverse splitting of the net fluctuation entering each cell.
    const int tax[2] = {(d + 1) % 3, (d + 2) % 3};
    const bool dbl = opt.transverse == TransverseMode::double_transverse && active[tax[0]] && active[tax[1]];
    Eigensystem te;
    State delta, tm, tp, um, up;
    for (c[2] = lo[2]; c[2] <= hi[2]; ++c[2])
      for (c[1] = lo[1]; c[1] <= hi[1]; ++c[1])
        for (c[0] = lo[0]; c[0] <= hi[0]; ++c[0]) {
          if (c[d] < 0 || c[d] >= gs.n(d)) continue;
          auto cp = c;
          cp[d] += 1;
          for (int m = 0; m < kNumVars; ++m) delta[m] = apdq(c)[m] - cq(c)[m] + amdq(cp)[m] + cq(cp)[m];
          const State qc = detail::load(q, c[0], c[1], c[2]);
          for (int t = 0; t < 2; ++t) {
            const int e = tax[t], eo = tax[1 - t];
            if (!active[e]) continue;
            eigensystem(qc, qc, e, opt.gamma, te);
            detail::transverse_split(te, delta, tm, tp);
            auto up_face = c;
            up_face[e] += 1;
            g[e].add(c[0], c[1], c[2], -0.5 * dtdx, tm);
            g[e].add(up_face[0], up_face[1], up_face[2], -0.5 * dtdx, tp);
            if (!dbl) continue;
            Eigensystem to;
            eigensystem(qc, qc, eo, opt.gamma, to);
            for (int sigma = -1; sigma <= 1; sigma += 2) {
              detail::transverse_split(to, sigma < 0 ? tm : tp, um, up);
              const double coef = sigma * dtdx * dt / gs.d(e) / 6.0;
              for (int tau = 0; tau < 2; ++tau) {
                auto face = c;
                face[eo] += tau;
                auto moved = face;
                moved[e] += sigma;
                const State& u = tau == 0 ? um : up;
                g[eo].add(moved[0], moved[1], moved[2], -coef, u);
                g[eo].add(face[0], face[1], face[2], coef, u);
              }
            }
          }
        }
  }
  res.stats.max_courant = courant;
  if (courant > 1.0) throw StepRejected("mhd_step: Courant number " + std::to_string(courant) + " > 1", courant);
  detail::finish_step(res.qstar, g, active, dt, opt.gamma, res.stats);
  return res;
}

}  // namespace ctmhd
