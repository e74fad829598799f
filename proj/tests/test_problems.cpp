#include <doctest.h>

#include <cmath>

#include "ctmhd/problems.hpp"

using namespace ctmhd;

namespace {

double max_curl_error(const PotentialField& a, const BoundarySpec& bc, const Field& b) {
  PotentialField A = a;
  A.fill(bc);
  const Field B = curl_centered(A);
  const GridSpec& g = b.spec();
  double e = 0.0;
  for (int c = 0; c < 3; ++c)
    for (int k = 0; k < g.nz; ++k)
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) e = std::max(e, std::abs(B(c, i, j, k) - b(c, i, j, k)));
  return e;
}

Field field_of(const Field& q) { return q.extract(BX, 3); }

double scaled_div_of_initial_curl(const ProblemSetup& s) {
  CtState st = initial_state(s);
  const Field B = curl_centered(st.A);
  return divergence_report(B).scaled;
}

}  // namespace

TEST_CASE("Alfven directions form a right-handed frame") {
  for (double theta : {0.0, std::atan(0.5), 0.3}) {
    AlfvenSpec s;
    s.theta = theta;
    const Vec3 n = s.normal(), t = s.tangent(), r = s.binormal();
    auto dot = [](const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; };
    CHECK(dot(n, n) == doctest::Approx(1.0));
    CHECK(dot(t, t) == doctest::Approx(1.0));
    CHECK(dot(r, r) == doctest::Approx(1.0));
    CHECK(std::abs(dot(n, t)) < 1e-15);
    CHECK(std::abs(dot(n, r)) < 1e-15);
    CHECK(std::abs(dot(t, r)) < 1e-15);
    // r = n x t
    CHECK(r[0] == doctest::Approx(n[1] * t[2] - n[2] * t[1]));
    CHECK(r[1] == doctest::Approx(n[2] * t[0] - n[0] * t[2]));
    CHECK(r[2] == doctest::Approx(n[0] * t[1] - n[1] * t[0]));
  }
}

TEST_CASE("Alfven initial state and exact solution") {
  AlfvenSpec spec;
  spec.theta = std::atan(0.5);
  const GridSpec g = alfven_grid(spec, 8, 16, 16);
  CHECK(g.dx * g.nx * spec.normal()[0] == doctest::Approx(1.0));
  CHECK(g.dz * g.nz * spec.normal()[2] == doctest::Approx(1.0));
  const ProblemSetup s = alfven_init(spec, g);
  CHECK(s.end_time == 1.0);
  CHECK(s.name == "alfven");

  const AlfvenExact e0 = alfven_exact(spec, 0.0, g), e1 = alfven_exact(spec, 1.0, g),
                    eh = alfven_exact(spec, 0.5, g);
  const Vec3 n = spec.normal();
  Vec3 mean{0, 0, 0};
  double d01 = 0.0, dh = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        double b2 = 0.0;
        for (int c = 0; c < 3; ++c) {
          b2 += e0.b(c, i, j, k) * e0.b(c, i, j, k);
          mean[c] += e0.b(c, i, j, k) / double(g.cells());
          d01 = std::max(d01, std::abs(e1.b(c, i, j, k) - e0.b(c, i, j, k)));
          dh = std::max(dh, std::abs((eh.b(c, i, j, k) - n[c]) + (e0.b(c, i, j, k) - n[c])));
          // Velocity equals the transverse field.
          CHECK(e0.q(MX + c, i, j, k) == doctest::Approx(e0.b(c, i, j, k) - n[c]).epsilon(1e-12));
          CHECK(s.q0(BX + c, i, j, k) == e0.b(c, i, j, k));
        }
        CHECK(std::sqrt(b2) == doctest::Approx(std::sqrt(1.01)).epsilon(1e-13));
        State q;
        for (int m = 0; m < kNumVars; ++m) q[m] = e0.q(m, i, j, k);
        CHECK(pressure(q) == doctest::Approx(spec.press).epsilon(1e-12));
      }
  CHECK(d01 <= 1e-12);
  CHECK(dh <= 1e-12);
  for (int c = 0; c < 3; ++c) CHECK(mean[c] == doctest::Approx(n[c]).epsilon(1e-12));
}

TEST_CASE("Alfven potential curl converges to the field") {
  for (bool planar : {true, false}) {
    AlfvenSpec spec;
    if (!planar) spec.theta = std::atan(0.5);
    auto err = [&](int m) {
      const GridSpec g = planar ? alfven_grid(spec, 8 * m, 16 * m, 1) : alfven_grid(spec, 4 * m, 8 * m, 8 * m);
      const AlfvenExact e = alfven_exact(spec, 0.3, g);
      return max_curl_error(e.a, BoundarySpec::uniform(BcKind::periodic), e.b);
    };
    const double e1 = err(2), e2 = err(4);
    CHECK(std::log2(e1 / e2) == doctest::Approx(2.0).epsilon(0.05));
  }
  AlfvenSpec bad;
  bad.theta = 0.2;
  CHECK_THROWS_AS(alfven_grid(bad, 8, 8, 1), ConfigError);
  CHECK_THROWS_AS(alfven_grid(AlfvenSpec{}, 8, 8, 4), ConfigError);
}

TEST_CASE("shock tube rotation") {
  const RotationSpec rot = shock_tube_rotation();
  const Mat3 f = rot.forward(), v = rot.vector_to_cartesian();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double fv = 0.0, ff = 0.0;
      for (int c = 0; c < 3; ++c) {
        fv += f[a][c] * v[c][b];
        ff += f[a][c] * f[b][c];
      }
      CHECK(fv == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-15));
      CHECK(ff == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-15));
    }
  // xi is unchanged by the periodic shifts used at the y and z faces.
  const GridSpec g = rotated_shock_tube_grid(1);
  const Vec3 x = g.center(100, 3, 5);
  for (const auto& s : {std::array<int, 3>{1, -2, 0}, std::array<int, 3>{1, 0, -4}}) {
    const Vec3 y = g.center(100 + s[0], 3 + s[1], 5 + s[2]);
    CHECK(rot.to_rotated(y)[0] == doctest::Approx(rot.to_rotated(x)[0]).epsilon(1e-14));
  }
  const Vec3 e = rot.to_cartesian(rot.to_rotated({0.3, -0.2, 0.7}));
  CHECK(e[0] == doctest::Approx(0.3));
  CHECK(e[1] == doctest::Approx(-0.2));
  CHECK(e[2] == doctest::Approx(0.7));
}

TEST_CASE("shock tube states") {
  GridSpec g = rotated_shock_tube_grid(1);
  const ProblemSetup s = rotated_shock_tube_init(g);
  const RotationSpec rot = shock_tube_rotation();
  const double s4 = 1.0 / std::sqrt(4.0 * M_PI);
  int left = 0, right = 0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        State q;
        for (int m = 0; m < kNumVars; ++m) q[m] = s.q0(m, i, j, k);
        const bool l = rot.to_rotated(g.center(i, j, k))[0] < 0.0;
        (l ? left : right)++;
        CHECK(q[RHO] == (l ? 1.08 : 1.0));
        CHECK(pressure(q) == doctest::Approx(l ? 0.95 : 1.0).epsilon(1e-12));
        const Vec3 br = rot.to_rotated({q[BX], q[BY], q[BZ]});
        CHECK(br[0] == doctest::Approx(2.0 * s4).epsilon(1e-12));
        CHECK(br[1] == doctest::Approx((l ? 3.6 : 4.0) * s4).epsilon(1e-12));
      }
  CHECK(left > 0);
  CHECK(right > 0);
  CHECK(s.limiter == LimiterKind::minmod);
  CHECK(s.nu == 0.05);
  CHECK(scaled_div_of_initial_curl(s) <= 1e-12);

  const ProblemSetup one = shock_tube_1d_init(100);
  CHECK(one.grid.nx == 100);
  CHECK(one.q0(RHO, 0, 0, 0) == 1.08);
  CHECK(one.q0(RHO, 99, 0, 0) == 1.0);
  GridSpec uneven = g;
  uneven.dy *= 2.0;
  CHECK_THROWS_AS(rotated_shock_tube_init(uneven), ConfigError);
  CHECK_THROWS_AS(rotated_shock_tube_grid(0), ConfigError);
}

TEST_CASE("Orszag-Tang initial state") {
  const GridSpec g = orszag_tang_grid(16);
  const ProblemSetup s = orszag_tang_init(g);
  for (int k = 0; k < g.nz; k += 3)
    for (int j = 0; j < g.ny; j += 2)
      for (int i = 0; i < g.nx; ++i) {
        State q;
        for (int m = 0; m < kNumVars; ++m) q[m] = s.q0(m, i, j, k);
        CHECK(q[RHO] / pressure(q) == doctest::Approx(kGamma).epsilon(1e-12));
      }
  auto err = [](int n) {
    const ProblemSetup p = orszag_tang_init(orszag_tang_grid(n));
    return max_curl_error(p.a0, p.a_bc, field_of(p.q0));
  };
  CHECK(std::log2(err(16) / err(32)) == doctest::Approx(2.0).epsilon(0.05));
  CHECK(scaled_div_of_initial_curl(s) <= 1e-12);
}

TEST_CASE("cloud-shock initial state") {
  const GridSpec g = cloud_shock_grid(20, true);
  CHECK(g.ny == 10);
  CHECK(g.y0 == 0.5);
  CHECK_THROWS_AS(cloud_shock_grid(21, true), ConfigError);
  const ProblemSetup s = cloud_shock_init(g, true);
  PotentialField A = s.a0;
  A.fill(s.a_bc);
  const Field B = curl_centered(A);
  const double bl = 2.1826182, br = 0.56418958;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        const Vec3 x = g.center(i, j, k);
        const double r2 = (x[0] - 0.25) * (x[0] - 0.25) + (x[1] - 0.5) * (x[1] - 0.5) + (x[2] - 0.5) * (x[2] - 0.5);
        const double rho = s.q0(RHO, i, j, k);
        if (x[0] < 0.05) {
          CHECK(rho == 3.86859);
          if (i + 1 < g.nx && g.center(0, i + 1) < 0.05) {
            CHECK(B(0, i, j, k) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
            CHECK(B(1, i, j, k) == doctest::Approx(bl).epsilon(1e-12));
            CHECK(B(2, i, j, k) == doctest::Approx(-bl).epsilon(1e-12));
          }
        } else {
          CHECK(rho == (r2 < 0.0225 ? 10.0 : 1.0));
          if (i > 0 && g.center(0, i - 1) > 0.05) {
            CHECK(B(1, i, j, k) == doctest::Approx(br).epsilon(1e-12));
            CHECK(B(2, i, j, k) == doctest::Approx(br).epsilon(1e-12));
          }
        }
      }
  CHECK(s.output_times.size() == 4);
  CHECK(scaled_div_of_initial_curl(s) <= 1e-12);
  CHECK(scaled_div_of_initial_curl(cloud_shock_init(cloud_shock_grid(12, false), false)) <= 1e-12);
}

TEST_CASE("projection onto the shock normal") {
  GridSpec g;
  g.nx = 4;
  g.ny = 3;
  g.nz = 2;
  g.dx = g.dy = g.dz = 0.5;
  Field f(g, 2);
  for (int k = 0; k < 2; ++k)
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) f(1, i, j, k) = 100 * k + 10 * j + i;
  RotationSpec rot;  // identity
  const auto p = project_xi(g, rot, f, 1);
  CHECK(p.size() == g.cells());
  for (std::size_t n = 1; n < p.size(); ++n) CHECK(p[n - 1].first <= p[n].first);
  CHECK(p.front().first == doctest::Approx(0.25));
  CHECK(p.back().first == doctest::Approx(1.75));
  // Stable: equal xi keep x-fastest order.
  CHECK(p[0].second == 0.0);
  CHECK(p[1].second == 10.0);
}

TEST_CASE("every initial potential has a divergence-free curl") {
  AlfvenSpec planar;
  CHECK(scaled_div_of_initial_curl(alfven_init(planar, alfven_grid(planar, 8, 16, 1))) <= 1e-12);
  AlfvenSpec oblique;
  oblique.theta = std::atan(0.5);
  CHECK(scaled_div_of_initial_curl(alfven_init(oblique, alfven_grid(oblique, 4, 8, 8))) <= 1e-12);
}
