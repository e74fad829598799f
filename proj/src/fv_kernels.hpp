#pragma once

// Per-interface and per-cell building blocks shared by the parallel and
// reference wave-propagation updates.

#include <algorithm>
#include <cmath>
#include <vector>

#include "ctmhd/fv_solver.hpp"

namespace ctmhd::detail {

struct Interface {
  std::array<double, kNumVars> s;
  std::array<State, kNumVars> z;
  double cf;
};

inline void solve_interface(const State& ql, const State& qr, const State& fl, const State& fr, int axis,
                            double gamma, Eigensystem& eig, Interface& out) {
  eigensystem(ql, qr, axis, gamma, eig);
  State df;
  for (int m = 0; m < kNumVars; ++m) df[m] = fr[m] - fl[m];
  out.s = eig.speed;
  out.cf = eig.cf;
  for (int w = 0; w < kNumVars; ++w) {
    const State& l = eig.left[w];
    double beta = 0.0;
    for (int m = 0; m < kNumVars; ++m) beta += l[m] * df[m];
    const State& r = eig.right[w];
    for (int m = 0; m < kNumVars; ++m) out.z[w][m] = beta * r[m];
  }
}

inline bool zero_speed(double s, double cf) { return std::abs(s) < 1e-12 * cf; }

inline void fluctuations(const Interface& f, State& amdq, State& apdq) {
  amdq.fill(0.0);
  apdq.fill(0.0);
  for (int w = 0; w < kNumVars; ++w) {
    const double s = f.s[w];
    const State& z = f.z[w];
    if (zero_speed(s, f.cf)) {
      for (int m = 0; m < kNumVars; ++m) {
        amdq[m] += 0.5 * z[m];
        apdq[m] += 0.5 * z[m];
      }
    } else if (s < 0.0) {
      for (int m = 0; m < kNumVars; ++m) amdq[m] += z[m];
    } else {
      for (int m = 0; m < kNumVars; ++m) apdq[m] += z[m];
    }
  }
}

inline double dot(const State& a, const State& b) {
  double s = 0.0;
  for (int m = 0; m < kNumVars; ++m) s += a[m] * b[m];
  return s;
}

// Upwind wave of family w for the limiter ratio. Families sharing the speed s at the upwind face are
// summed, so the ratio does not depend on the basis chosen inside a degenerate eigenspace.
inline State upwind_wave(const Interface& up, int w) {
  State zu = up.z[w];
  const double tol = 1e-12 * up.cf;
  for (int v = 0; v < kNumVars; ++v) {
    if (v == w || std::abs(up.s[v] - up.s[w]) >= tol) continue;
    for (int m = 0; m < kNumVars; ++m) zu[m] += up.z[v][m];
  }
  return zu;
}

// Full correction sum cq = sum_p sign(s)(1 - dt/dx |s|) Z^p phi(theta^p); the flux is cq/2.
inline void correction(const Interface& lo, const Interface& here, const Interface& hi, double dtdx,
                       const FvOptions& opt, State& cq) {
  cq.fill(0.0);
  for (int w = 0; w < kNumVars; ++w) {
    const double s = here.s[w];
    if (zero_speed(s, here.cf)) continue;
    const State& z = here.z[w];
    const double zz = dot(z, z);
    if (zz == 0.0) continue;
    const double phi = limiter_phi(dot(z, upwind_wave(s > 0.0 ? lo : hi, w)) / zz, opt.limiter);
    if (phi == 0.0) continue;
    double as = std::abs(s);
    if (opt.entropy_fix) {
      const double delta = opt.entropy_delta * here.cf;
      if (as < delta) as = 0.5 * (s * s + delta * delta) / delta;
    }
    const double c = (s > 0.0 ? 1.0 : -1.0) * (1.0 - dtdx * as) * phi;
    for (int m = 0; m < kNumVars; ++m) cq[m] += c * z[m];
  }
}

// Splits delta into down-going and up-going parts with the eigensystem of axis e.
inline void transverse_split(const Eigensystem& e, const State& delta, State& minus, State& plus) {
  minus.fill(0.0);
  plus.fill(0.0);
  for (int w = 0; w < kNumVars; ++w) {
    const double s = e.speed[w];
    if (s == 0.0) continue;
    const double beta = s * dot(e.left[w], delta);
    State& out = s < 0.0 ? minus : plus;
    const State& r = e.right[w];
    for (int m = 0; m < kNumVars; ++m) out[m] += beta * r[m];
  }
}

// Face-centred flux accumulator for one axis over interior faces.
class FaceFlux {
 public:
  FaceFlux() = default;
  FaceFlux(const GridSpec& g, int axis) : axis_(axis) {
    for (int b = 0; b < 3; ++b) n_[b] = g.n(b) + (b == axis ? 1 : 0);
    v_.assign(std::size_t(n_[0]) * n_[1] * n_[2], State{});
  }
  bool inside(int i, int j, int k) const {
    return i >= 0 && j >= 0 && k >= 0 && i < n_[0] && j < n_[1] && k < n_[2];
  }
  State& at(int i, int j, int k) { return v_[(std::size_t(k) * n_[1] + j) * n_[0] + i]; }
  const State& at(int i, int j, int k) const { return v_[(std::size_t(k) * n_[1] + j) * n_[0] + i]; }
  void add(int i, int j, int k, double c, const State& s) {
    if (!inside(i, j, k)) return;
    State& t = at(i, j, k);
    for (int m = 0; m < kNumVars; ++m) t[m] += c * s[m];
  }
  int axis() const { return axis_; }

 private:
  int axis_ = 0;
  int n_[3] = {0, 0, 0};
  std::vector<State> v_;
};

inline State load(const Field& q, int i, int j, int k) {
  State s;
  const std::size_t o = q.offset(i, j, k);
  const std::size_t cs = q.component_size();
  const double* p = q.values().data();
  for (int m = 0; m < kNumVars; ++m) s[m] = p[m * cs + o];
  return s;
}

// Applies the accumulated face fluxes and checks admissibility.
void finish_step(Field& qstar, const std::array<FaceFlux, 3>& g, const std::array<bool, 3>& active, double dt,
                 double gamma, StepStats& stats);

}  // namespace ctmhd::detail
