#include "ctmhd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ctmhd {

namespace {

constexpr double kPi = std::numbers::pi;

void store(Field& q, int i, int j, int k, const State& s) {
  for (int m = 0; m < kNumVars; ++m) q(m, i, j, k) = s[m];
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 mat_vec(const Mat3& m, const Vec3& v) {
  return {dot3(m[0], v), dot3(m[1], v), dot3(m[2], v)};
}

}  // namespace

Vec3 AlfvenSpec::normal() const {
  return {std::cos(phi) * std::cos(theta), std::sin(phi) * std::cos(theta), std::sin(theta)};
}

Vec3 AlfvenSpec::tangent() const { return {-std::sin(phi), std::cos(phi), 0.0}; }

Vec3 AlfvenSpec::binormal() const {
  return {-std::cos(phi) * std::sin(theta), -std::sin(phi) * std::sin(theta), std::cos(theta)};
}

GridSpec alfven_grid(const AlfvenSpec& spec, int nx, int ny, int nz) {
  const Vec3 n = spec.normal();
  if (std::abs(n[0]) < 1e-12 || std::abs(n[1]) < 1e-12)
    throw ConfigError("alfven: angles give an unbounded domain");
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.nz = nz;
  g.dx = 1.0 / n[0] / nx;
  g.dy = 1.0 / n[1] / ny;
  if (nz == 1) {
    if (spec.theta != 0.0) throw ConfigError("alfven: a single z cell requires theta = 0");
    g.dz = g.dx;
  } else {
    if (std::abs(n[2]) < 1e-12) throw ConfigError("alfven: theta = 0 needs nz = 1");
    g.dz = 1.0 / n[2] / nz;
  }
  g.validate();
  return g;
}

namespace {

// Linear part of the Alfven potential: gradient rows per component.
std::vector<Vec3> alfven_linear(const AlfvenSpec& spec) {
  const Vec3 b = spec.normal();
  std::vector<Vec3> g(3, Vec3{0.0, 0.0, 0.0});
  if (spec.planar()) {
    // In-plane mean field carried by A3 alone: A3 = y cos(phi) - x sin(phi).
    g[2] = {-b[1], b[0], 0.0};
  } else {
    g[0][2] = b[1];
    g[1][0] = b[2];
    g[2][1] = b[0];
  }
  return g;
}

void alfven_fill(const AlfvenSpec& spec, double t, const GridSpec& grid, Field& q, Field& b, Field& a) {
  const Vec3 n = spec.normal(), tv = spec.tangent(), r = spec.binormal();
  const auto lin = alfven_linear(spec);
  const double amp = spec.amplitude;
  const double pa = amp / (2.0 * kPi);
  const double gauge = std::tan(spec.theta);
  for (int k = 0; k < grid.nz; ++k)
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const Vec3 x = grid.center(i, j, k);
        const double psi0 = 2.0 * kPi * dot3(n, x);
        // The wave moves towards -n: u = B_perp with B_n = 1.
        const double psi = psi0 + 2.0 * kPi * t;
        Primitive w;
        w.rho = spec.rho;
        w.press = spec.press;
        for (int c = 0; c < 3; ++c) {
          const double perp = amp * (std::sin(psi) * tv[c] + std::cos(psi) * r[c]);
          w.vel[c] = perp;
          w.bfield[c] = n[c] + perp;
        }
        store(q, i, j, k, prim_to_state(w));
        for (int c = 0; c < 3; ++c) {
          b(c, i, j, k) = w.bfield[c];
          a(c, i, j, k) = dot3(lin[c], x) + pa * (std::sin(psi) * tv[c] + std::cos(psi) * r[c]) +
                          pa * gauge * std::cos(psi0) * n[c];
        }
      }
}

}  // namespace

ProblemSetup alfven_init(const AlfvenSpec& spec, const GridSpec& grid) {
  if (spec.planar() != (grid.nz == 1)) throw ConfigError("alfven: planar variant needs theta = 0 and nz = 1");
  ProblemSetup s;
  s.name = spec.planar() ? "alfven25" : "alfven";
  s.grid = grid;
  s.q_bc = BoundarySpec::uniform(BcKind::periodic);
  s.a_bc = BoundarySpec::uniform(BcKind::periodic);
  s.q0 = Field(grid, kNumVars);
  Field b(grid, 3);
  s.a0.a = Field(grid, 3);
  s.a0.linear.linear = alfven_linear(spec);
  alfven_fill(spec, 0.0, grid, s.q0, b, s.a0.a);
  s.end_time = spec.planar() ? 1.5 : 1.0;
  s.limiter = LimiterKind::none;
  s.nu = 0.0;
  s.output_times = {s.end_time};
  return s;
}

AlfvenExact alfven_exact(const AlfvenSpec& spec, double t, const GridSpec& grid) {
  AlfvenExact e{Field(grid, kNumVars), Field(grid, 3), {Field(grid, 3), {alfven_linear(spec)}}};
  alfven_fill(spec, t, grid, e.q, e.b, e.a.a);
  return e;
}

Mat3 RotationSpec::forward() const {
  const double ca = std::cos(alpha), sa = std::sin(alpha), cb = std::cos(beta), sb = std::sin(beta);
  return {{{ca * cb, ca * sb, sa}, {-sb, cb, 0.0}, {-sa * cb, -sa * sb, ca}}};
}

Mat3 RotationSpec::vector_to_cartesian() const {
  const double ca = std::cos(alpha), sa = std::sin(alpha), cb = std::cos(beta), sb = std::sin(beta);
  return {{{ca * cb, -sb, -sa * cb}, {ca * sb, cb, -sa * sb}, {sa, 0.0, ca}}};
}

Vec3 RotationSpec::to_rotated(const Vec3& x) const { return mat_vec(forward(), x); }
Vec3 RotationSpec::to_cartesian(const Vec3& v) const { return mat_vec(vector_to_cartesian(), v); }

RotationSpec shock_tube_rotation() {
  // Chosen so that xi is invariant under the (1,-2,0) and (1,0,-4) cell shifts: xi ~ 4x + 2y + z.
  RotationSpec r;
  r.beta = std::atan(0.5);
  r.alpha = std::atan(0.25 * std::cos(r.beta));
  return r;
}

GridSpec rotated_shock_tube_grid(int scale) {
  if (scale < 1) throw ConfigError("shock tube: scale must be >= 1");
  GridSpec g;
  g.nx = 768 * scale;
  g.ny = 8 * scale;
  g.nz = 8 * scale;
  g.x0 = -0.75;
  g.dx = 1.5 / g.nx;
  g.dy = 0.015625 / g.ny;
  g.dz = 0.015625 / g.nz;
  return g;
}

namespace {

struct TubeState {
  double rho, u[3], p, b[3];
};

TubeState tube_state(bool left) {
  const double s = 1.0 / std::sqrt(4.0 * kPi);
  if (left) return {1.08, {1.2, 0.01, 0.5}, 0.95, {2.0 * s, 3.6 * s, 2.0 * s}};
  return {1.0, {0.0, 0.0, 0.0}, 1.0, {2.0 * s, 4.0 * s, 2.0 * s}};
}

}  // namespace

ProblemSetup rotated_shock_tube_init(const GridSpec& grid) {
  const double tol = 1e-12 * grid.dx;
  if (std::abs(grid.dx - grid.dy) > tol || std::abs(grid.dx - grid.dz) > tol)
    throw ConfigError("shock tube: shift relations need dx = dy = dz");
  if (grid.ny < 2 || grid.nz < 4) throw ConfigError("shock tube: need ny >= 2 and nz >= 4");
  const RotationSpec rot = shock_tube_rotation();
  const Mat3 f = rot.forward();
  ProblemSetup s;
  s.name = "shock_tube";
  s.grid = grid;
  for (BoundarySpec* bc : {&s.q_bc, &s.a_bc}) {
    bc->lo(1) = {BcKind::shifted_shock_tube, {}, {-1, 2, 0}};
    bc->hi(1) = {BcKind::shifted_shock_tube, {}, {1, -2, 0}};
    bc->lo(2) = {BcKind::shifted_shock_tube, {}, {-1, 0, 4}};
    bc->hi(2) = {BcKind::shifted_shock_tube, {}, {1, 0, -4}};
  }
  s.q_bc.lo(0).kind = s.q_bc.hi(0).kind = BcKind::extrapolate0;
  s.a_bc.lo(0).kind = s.a_bc.hi(0).kind = BcKind::extrapolate1;

  s.q0 = Field(grid, kNumVars);
  s.a0.a = Field(grid, 3);
  const double bxi = tube_state(false).b[0];
  // A = eta B^xi e_zeta + f(xi); only the eta term changes under the ghost shifts.
  s.a0.linear.linear.assign(3, Vec3{});
  for (int c = 0; c < 3; ++c)
    for (int d = 0; d < 3; ++d) s.a0.linear.linear[c][d] = bxi * f[2][c] * f[1][d];
  for (int k = 0; k < grid.nz; ++k)
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const Vec3 xr = rot.to_rotated(grid.center(i, j, k));
        const TubeState t = tube_state(xr[0] < 0.0);
        Primitive w;
        w.rho = t.rho;
        w.press = t.p;
        w.vel = rot.to_cartesian({t.u[0], t.u[1], t.u[2]});
        w.bfield = rot.to_cartesian({t.b[0], t.b[1], t.b[2]});
        store(s.q0, i, j, k, prim_to_state(w));
        const Vec3 ar{0.0, xr[0] * t.b[2], xr[1] * t.b[0] - xr[0] * t.b[1]};
        const Vec3 ac = rot.to_cartesian(ar);
        for (int c = 0; c < 3; ++c) s.a0.a(c, i, j, k) = ac[c];
      }
  s.end_time = 0.2;
  s.limiter = LimiterKind::minmod;
  s.nu = 0.05;
  s.output_times = {0.2};
  return s;
}

ProblemSetup shock_tube_1d_init(int cells) {
  GridSpec g;
  g.nx = cells;
  g.x0 = -0.75;
  g.dx = g.dy = g.dz = 1.5 / cells;
  ProblemSetup s;
  s.name = "shock_tube_1d";
  s.grid = g;
  s.q_bc = BoundarySpec::uniform(BcKind::periodic);
  s.q_bc.lo(0).kind = s.q_bc.hi(0).kind = BcKind::extrapolate0;
  s.a_bc = BoundarySpec::uniform(BcKind::periodic);
  s.a_bc.lo(0).kind = s.a_bc.hi(0).kind = BcKind::extrapolate1;
  s.q0 = Field(g, kNumVars);
  s.a0.a = Field(g, 3);
  const double bxi = tube_state(false).b[0];
  s.a0.linear.linear = {Vec3{}, Vec3{}, Vec3{0.0, bxi, 0.0}};
  for (int i = 0; i < g.nx; ++i) {
    const Vec3 x = g.center(i, 0, 0);
    const TubeState t = tube_state(x[0] < 0.0);
    Primitive w;
    w.rho = t.rho;
    w.press = t.p;
    w.vel = {t.u[0], t.u[1], t.u[2]};
    w.bfield = {t.b[0], t.b[1], t.b[2]};
    store(s.q0, i, 0, 0, prim_to_state(w));
    s.a0.a(1, i, 0, 0) = x[0] * t.b[2];
    s.a0.a(2, i, 0, 0) = x[1] * t.b[0] - x[0] * t.b[1];
  }
  s.end_time = 0.2;
  s.limiter = LimiterKind::minmod;
  s.nu = 0.0;
  s.output_times = {0.2};
  return s;
}

GridSpec orszag_tang_grid(int n) {
  GridSpec g;
  g.nx = g.ny = g.nz = n;
  g.dx = g.dy = g.dz = 2.0 * kPi / n;
  return g;
}

ProblemSetup orszag_tang_init(const GridSpec& grid) {
  constexpr double eps = 0.2;
  const double gamma = kGamma;
  ProblemSetup s;
  s.name = "orszag_tang";
  s.grid = grid;
  s.q_bc = BoundarySpec::uniform(BcKind::periodic);
  s.a_bc = BoundarySpec::uniform(BcKind::periodic);
  s.q0 = Field(grid, kNumVars);
  s.a0.a = Field(grid, 3);
  for (int k = 0; k < grid.nz; ++k)
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const auto [x, y, z] = grid.center(i, j, k);
        const double amp = 1.0 + eps * std::sin(z);
        Primitive w;
        w.rho = gamma * gamma;
        w.press = gamma;
        w.vel = {-amp * std::sin(y), amp * std::sin(x), eps * std::sin(z)};
        w.bfield = {-std::sin(y), std::sin(2.0 * x), 0.0};
        store(s.q0, i, j, k, prim_to_state(w));
        // cos(2x)/2 so that -dA3/dx reproduces sin(2x).
        s.a0.a(2, i, j, k) = std::cos(y) + 0.5 * std::cos(2.0 * x);
      }
  s.end_time = 1.0;
  s.limiter = LimiterKind::mc;
  s.nu = 0.05;
  s.output_times = {0.5, 1.0};
  return s;
}

GridSpec cloud_shock_grid(int nx, bool quarter) {
  if (quarter && nx % 2 != 0) throw ConfigError("cloud shock: quarter domain needs an even nx");
  GridSpec g;
  g.nx = nx;
  g.ny = g.nz = quarter ? nx / 2 : nx;
  g.dx = g.dy = g.dz = 1.0 / nx;
  g.y0 = g.z0 = quarter ? 0.5 : 0.0;
  return g;
}

ProblemSetup cloud_shock_init(const GridSpec& grid, bool quarter) {
  constexpr double xs = 0.05;
  constexpr double bl = 2.1826182, br = 0.56418958;
  ProblemSetup s;
  s.name = "cloud_shock";
  s.grid = grid;
  s.q_bc = BoundarySpec::uniform(BcKind::extrapolate0);
  if (quarter) {
    s.q_bc.lo(1) = {BcKind::reflect_wall, {MY}, {}};
    s.q_bc.lo(2) = {BcKind::reflect_wall, {MZ}, {}};
  }
  s.a_bc = BoundarySpec::uniform(BcKind::extrapolate1);
  s.q0 = Field(grid, kNumVars);
  s.a0.a = Field(grid, 3);
  for (int k = 0; k < grid.nz; ++k)
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i) {
        const auto [x, y, z] = grid.center(i, j, k);
        Primitive w;
        if (x < xs) {
          w.rho = 3.86859;
          w.vel = {11.2536, 0.0, 0.0};
          w.press = 167.345;
          w.bfield = {0.0, bl, -bl};
          s.a0.a(0, i, j, k) = bl * y;
          s.a0.a(2, i, j, k) = -bl * (x - xs);
        } else {
          const double r2 = (x - 0.25) * (x - 0.25) + (y - 0.5) * (y - 0.5) + (z - 0.5) * (z - 0.5);
          w.rho = r2 < 0.15 * 0.15 ? 10.0 : 1.0;
          w.vel = {0.0, 0.0, 0.0};
          w.press = 1.0;
          w.bfield = {0.0, br, br};
          s.a0.a(0, i, j, k) = -br * y;
          s.a0.a(2, i, j, k) = -br * (x - xs);
        }
        store(s.q0, i, j, k, prim_to_state(w));
      }
  s.end_time = 0.06;
  s.limiter = LimiterKind::minmod;
  s.nu = 0.02;
  s.output_times = {0.0, 0.02, 0.04, 0.06};
  return s;
}

std::vector<std::pair<double, double>> project_xi(const GridSpec& grid, const RotationSpec& rot, const Field& field,
                                                  int comp) {
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.cells());
  const Mat3 f = rot.forward();
  for (int k = 0; k < grid.nz; ++k)
    for (int j = 0; j < grid.ny; ++j)
      for (int i = 0; i < grid.nx; ++i)
        out.emplace_back(dot3(f[0], grid.center(i, j, k)), field(comp, i, j, k));
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

CtState initial_state(const ProblemSetup& setup) {
  CtState st{setup.q0, setup.a0, 0.0};
  fill_ghost(st.q, setup.q_bc);
  st.A.fill(setup.a_bc);
  return st;
}

}  // namespace ctmhd
