#include "ctmhd/mhd.hpp"

#include <algorithm>
#include <cmath>

namespace ctmhd {

State to_state(const Conserved& q) {
  return {q.rho, q.mom[0], q.mom[1], q.mom[2], q.ener, q.bfield[0], q.bfield[1], q.bfield[2]};
}

Conserved to_conserved(const State& s) {
  return {s[RHO], {s[MX], s[MY], s[MZ]}, s[ENER], {s[BX], s[BY], s[BZ]}};
}

Primitive cons_to_prim(const Conserved& q, double gamma) {
  if (!(q.rho > 0.0)) throw AdmissibilityError("cons_to_prim: non-positive density", {-1, -1, -1});
  Primitive w;
  w.rho = q.rho;
  double ke = 0.0, me = 0.0;
  for (int c = 0; c < 3; ++c) {
    w.vel[c] = q.mom[c] / q.rho;
    w.bfield[c] = q.bfield[c];
    ke += q.mom[c] * w.vel[c];
    me += q.bfield[c] * q.bfield[c];
  }
  w.press = (gamma - 1.0) * (q.ener - 0.5 * me - 0.5 * ke);
  return w;
}

Conserved prim_to_cons(const Primitive& w, double gamma) {
  Conserved q;
  q.rho = w.rho;
  double ke = 0.0, me = 0.0;
  for (int c = 0; c < 3; ++c) {
    q.mom[c] = w.rho * w.vel[c];
    q.bfield[c] = w.bfield[c];
    ke += w.vel[c] * w.vel[c];
    me += w.bfield[c] * w.bfield[c];
  }
  q.ener = w.press / (gamma - 1.0) + 0.5 * w.rho * ke + 0.5 * me;
  return q;
}

State prim_to_state(const Primitive& w, double gamma) { return to_state(prim_to_cons(w, gamma)); }

double pressure(const State& q, double gamma) {
  const double ke = (q[MX] * q[MX] + q[MY] * q[MY] + q[MZ] * q[MZ]) / q[RHO];
  const double me = q[BX] * q[BX] + q[BY] * q[BY] + q[BZ] * q[BZ];
  return (gamma - 1.0) * (q[ENER] - 0.5 * me - 0.5 * ke);
}

State flux(const State& q, int d, double gamma) {
  const double rho = q[RHO];
  const double u[3] = {q[MX] / rho, q[MY] / rho, q[MZ] / rho};
  const double* b = &q[BX];
  const double b2 = b[0] * b[0] + b[1] * b[1] + b[2] * b[2];
  const double p = (gamma - 1.0) * (q[ENER] - 0.5 * b2 - 0.5 * (q[MX] * u[0] + q[MY] * u[1] + q[MZ] * u[2]));
  const double pt = p + 0.5 * b2;
  const double ub = u[0] * b[0] + u[1] * b[1] + u[2] * b[2];
  State f;
  f[RHO] = q[MX + d];
  for (int c = 0; c < 3; ++c) {
    f[MX + c] = q[MX + d] * u[c] - b[d] * b[c];
    f[BX + c] = u[d] * b[c] - b[d] * u[c];
  }
  f[MX + d] += pt;
  f[BX + d] = 0.0;
  f[ENER] = u[d] * (q[ENER] + pt) - b[d] * ub;
  return f;
}

namespace {

struct Speeds2 {
  double a2, ca2, cf2, cs2;
};

Speeds2 speeds_squared(double rho, double p, double bn, double bt2, double gamma) {
  Speeds2 s;
  s.a2 = gamma * p / rho;
  s.ca2 = bn * bn / rho;
  const double bp2 = bt2 / rho;
  const double diff = s.a2 - s.ca2;
  const double disc = std::sqrt(std::max(diff * diff + 2.0 * bp2 * (s.a2 + s.ca2) + bp2 * bp2, 0.0));
  s.cf2 = 0.5 * (s.a2 + s.ca2 + bp2 + disc);
  s.cs2 = s.cf2 > 0.0 ? s.a2 * s.ca2 / s.cf2 : 0.0;
  return s;
}

}  // namespace

WaveSpeeds wave_speeds(const Primitive& w, const Vec3& n, double gamma) {
  const double bn = w.bfield[0] * n[0] + w.bfield[1] * n[1] + w.bfield[2] * n[2];
  const double b2 = w.bfield[0] * w.bfield[0] + w.bfield[1] * w.bfield[1] + w.bfield[2] * w.bfield[2];
  const Speeds2 s = speeds_squared(w.rho, w.press, bn, std::max(b2 - bn * bn, 0.0), gamma);
  WaveSpeeds out;
  out.a = std::sqrt(std::max(s.a2, 0.0));
  out.ca = std::sqrt(s.ca2);
  out.cf = std::sqrt(s.cf2);
  out.cs = std::min(std::sqrt(s.cs2), out.ca);
  return out;
}

double max_signal_speed(const State& q, int axis, double gamma) {
  const double rho = q[RHO];
  const double p = std::max(pressure(q, gamma), 0.0);
  const double bn = q[BX + axis];
  const int t1 = (axis + 1) % 3, t2 = (axis + 2) % 3;
  const double bt2 = q[BX + t1] * q[BX + t1] + q[BX + t2] * q[BX + t2];
  const Speeds2 s = speeds_squared(rho, p, bn, bt2, gamma);
  return std::abs(q[MX + axis] / rho) + std::sqrt(s.cf2);
}

void eigensystem(const State& ql, const State& qr, int d, double gamma, Eigensystem& out) {
  constexpr double kTiny = 1e-300;
  const int t1 = (d + 1) % 3, t2 = (d + 2) % 3;
  const int ax[3] = {d, t1, t2};

  // Mean primitive state, in the frame (normal, t1, t2).
  const double rho_l = ql[RHO], rho_r = qr[RHO];
  const double rho = std::max(0.5 * (rho_l + rho_r), kTiny);
  double u[3], b[3];  // global components
  for (int c = 0; c < 3; ++c) {
    u[c] = 0.5 * (ql[MX + c] / rho_l + qr[MX + c] / rho_r);
    b[c] = 0.5 * (ql[BX + c] + qr[BX + c]);
  }
  const double p = 0.5 * (pressure(ql, gamma) + pressure(qr, gamma));
  const double un = u[d], bn = b[d];
  const double bt1 = b[t1], bt2 = b[t2];
  const double bt_sq = bt1 * bt1 + bt2 * bt2;

  const double sr = std::sqrt(rho);
  const double a2 = std::max(gamma * p / rho, 1e-14 * (bn * bn + bt_sq) / rho + kTiny);
  const double a = std::sqrt(a2);
  const double ca2 = bn * bn / rho;
  const double bp2 = bt_sq / rho;
  const double diff = a2 - ca2;
  const double disc = std::sqrt(diff * diff + 2.0 * bp2 * (a2 + ca2) + bp2 * bp2);
  const double cf2 = 0.5 * (a2 + ca2 + bp2 + disc);
  const double cs2 = a2 * ca2 / cf2;
  const double cf = std::sqrt(cf2), ca = std::sqrt(ca2), cs = std::min(std::sqrt(cs2), ca);

  double by = 1.0, bz = 0.0;
  if (bt_sq > 0.0) {
    const double bt = std::sqrt(bt_sq);
    by = bt1 / bt;
    bz = bt2 / bt;
  }
  const double sgn = bn < 0.0 ? -1.0 : 1.0;

  const double nf = std::max(a2 - cs2, 0.0);
  const double ns = std::max(cf2 - a2, 0.0);
  double af = 1.0, as = 0.0;
  if (nf + ns > 1e-14 * cf2) {
    af = std::sqrt(nf / (nf + ns));
    as = std::sqrt(ns / (nf + ns));
  }

  out.cf = cf;
  out.speed = {un - cf, un - ca, un - cs, un, un, un + cs, un + ca, un + cf};

  // Primitive vectors in the frame, order (rho, un, ut1, ut2, p, bn, bt1, bt2).
  double rp[8][8] = {};
  double lp[8][8] = {};
  const double ia2 = 1.0 / a2;
  for (int side = 0; side < 2; ++side) {
    const double s = side == 0 ? -1.0 : 1.0;
    const int f = side == 0 ? 0 : 7, al = side == 0 ? 1 : 6, sl = side == 0 ? 2 : 5;
    double* r = rp[f];
    r[0] = rho * af;
    r[1] = s * af * cf;
    r[2] = -s * as * cs * sgn * by;
    r[3] = -s * as * cs * sgn * bz;
    r[4] = rho * a2 * af;
    r[6] = as * sr * a * by;
    r[7] = as * sr * a * bz;
    double* l = lp[f];
    l[1] = s * af * cf * 0.5 * ia2;
    l[2] = -s * as * cs * sgn * by * 0.5 * ia2;
    l[3] = -s * as * cs * sgn * bz * 0.5 * ia2;
    l[4] = af * 0.5 * ia2 / rho;
    l[6] = as * by * 0.5 / (sr * a);
    l[7] = as * bz * 0.5 / (sr * a);

    r = rp[sl];
    r[0] = rho * as;
    r[1] = s * as * cs;
    r[2] = s * af * cf * sgn * by;
    r[3] = s * af * cf * sgn * bz;
    r[4] = rho * a2 * as;
    r[6] = -af * sr * a * by;
    r[7] = -af * sr * a * bz;
    l = lp[sl];
    l[1] = s * as * cs * 0.5 * ia2;
    l[2] = s * af * cf * sgn * by * 0.5 * ia2;
    l[3] = s * af * cf * sgn * bz * 0.5 * ia2;
    l[4] = as * 0.5 * ia2 / rho;
    l[6] = -af * by * 0.5 / (sr * a);
    l[7] = -af * bz * 0.5 / (sr * a);

    r = rp[al];
    r[2] = -bz;
    r[3] = by;
    r[6] = s * sgn * sr * bz;
    r[7] = -s * sgn * sr * by;
    l = lp[al];
    l[2] = -0.5 * bz;
    l[3] = 0.5 * by;
    l[6] = 0.5 * s * sgn * bz / sr;
    l[7] = -0.5 * s * sgn * by / sr;
  }
  rp[3][0] = 1.0;
  lp[3][0] = 1.0;
  lp[3][4] = -ia2;
  rp[4][5] = 1.0;
  lp[4][5] = 1.0;

  // Map to conservative variables: r = (dq/dw) r_w, l = l_w (dw/dq).
  const double gm1 = gamma - 1.0;
  const double u2h = 0.5 * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  for (int w = 0; w < 8; ++w) {
    const double* r = rp[w];
    State& R = out.right[w];
    double ru[3], rb[3];
    for (int c = 0; c < 3; ++c) {
      ru[ax[c]] = r[1 + c];
      rb[ax[c]] = r[5 + c];
    }
    R[RHO] = r[0];
    double e = u2h * r[0] + r[4] / gm1;
    for (int c = 0; c < 3; ++c) {
      R[MX + c] = u[c] * r[0] + rho * ru[c];
      R[BX + c] = rb[c];
      e += rho * u[c] * ru[c] + b[c] * rb[c];
    }
    R[ENER] = e;

    const double* l = lp[w];
    State& L = out.left[w];
    double lu[3], lb[3];
    for (int c = 0; c < 3; ++c) {
      lu[ax[c]] = l[1 + c];
      lb[ax[c]] = l[5 + c];
    }
    const double lpg = l[4] * gm1;
    double lr = l[0] + lpg * u2h;
    for (int c = 0; c < 3; ++c) {
      lr -= lu[c] * u[c] / rho;
      L[MX + c] = lu[c] / rho - lpg * u[c];
      L[BX + c] = lb[c] - lpg * b[c];
    }
    L[RHO] = lr;
    L[ENER] = lpg;
  }
}

Eigensystem eigensystem(const State& ql, const State& qr, int axis, double gamma) {
  Eigensystem e;
  eigensystem(ql, qr, axis, gamma, e);
  return e;
}

WaveFan fwave_decompose(const State& ql, const State& qr, int axis, double gamma) {
  const Eigensystem e = eigensystem(ql, qr, axis, gamma);
  const State fl = flux(ql, axis, gamma), fr = flux(qr, axis, gamma);
  State df;
  for (int m = 0; m < kNumVars; ++m) df[m] = fr[m] - fl[m];
  WaveFan fan;
  fan.speeds = e.speed;
  for (int w = 0; w < kNumVars; ++w) {
    double beta = 0.0;
    for (int m = 0; m < kNumVars; ++m) beta += e.left[w][m] * df[m];
    for (int m = 0; m < kNumVars; ++m) fan.fwaves[w][m] = beta * e.right[w][m];
  }
  return fan;
}

}  // namespace ctmhd
