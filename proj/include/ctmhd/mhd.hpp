#pragma once

#include <array>

#include "ctmhd/grid.hpp"

namespace ctmhd {

inline constexpr int kNumVars = 8;
inline constexpr double kGamma = 5.0 / 3.0;

// Conserved variable slots.
enum Var : int { RHO = 0, MX = 1, MY = 2, MZ = 3, ENER = 4, BX = 5, BY = 6, BZ = 7 };

using State = std::array<double, kNumVars>;

struct Conserved {
  double rho = 1.0;
  Vec3 mom{};
  double ener = 0.0;
  Vec3 bfield{};
};

struct Primitive {
  double rho = 1.0;
  Vec3 vel{};
  double press = 0.0;
  Vec3 bfield{};
};

State to_state(const Conserved& q);
Conserved to_conserved(const State& s);

Primitive cons_to_prim(const Conserved& q, double gamma = kGamma);
Conserved prim_to_cons(const Primitive& w, double gamma = kGamma);
State prim_to_state(const Primitive& w, double gamma = kGamma);

// Thermal pressure of a conserved state; no admissibility check.
double pressure(const State& q, double gamma = kGamma);

// Column `axis` of the flux tensor.
State flux(const State& q, int axis, double gamma = kGamma);

struct WaveSpeeds {
  double a = 0.0, ca = 0.0, cf = 0.0, cs = 0.0;
};

WaveSpeeds wave_speeds(const Primitive& w, const Vec3& n, double gamma = kGamma);

// |u_axis| + c_f along `axis`, straight from a conserved state.
double max_signal_speed(const State& q, int axis, double gamma = kGamma);

// Waves ordered u-cf, u-ca, u-cs, u (entropy), u (divergence), u+cs, u+ca, u+cf.
struct Eigensystem {
  std::array<double, kNumVars> speed{};
  std::array<State, kNumVars> right{};  // conservative right eigenvectors
  std::array<State, kNumVars> left{};   // conservative left eigenvectors
  double cf = 0.0;
};

// Eight-wave eigensystem at the arithmetic mean of the primitive states.
Eigensystem eigensystem(const State& ql, const State& qr, int axis, double gamma = kGamma);
void eigensystem(const State& ql, const State& qr, int axis, double gamma, Eigensystem& out);

struct WaveFan {
  std::array<double, kNumVars> speeds{};
  std::array<State, kNumVars> fwaves{};
  std::array<double, kNumVars> theta{};
};

// f-waves Z^p = (l^p . dF) r^p with dF = F(qr) - F(ql).
WaveFan fwave_decompose(const State& ql, const State& qr, int axis, double gamma = kGamma);

}  // namespace ctmhd
