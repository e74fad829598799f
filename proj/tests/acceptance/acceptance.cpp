// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <CLI11.hpp>
#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ctmhd/runner.hpp"

using namespace ctmhd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
  }
};

// Largest scaled divergence seen by any coupled run in this process.
struct DivergenceLog {
  double worst = 0.0;
  long steps = 0;
  std::vector<std::string> runs;

  std::function<void(const CtState&, const DiagnosticsRow&)> observer(const std::string& name) {
    runs.push_back(name);
    return [this](const CtState&, const DiagnosticsRow& r) {
      worst = std::max(worst, r.div_scaled);
      ++steps;
    };
  }
};

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

using Errors = std::array<double, 6>;
const char* kComponents[6] = {"B1", "B2", "B3", "A1", "A2", "A3"};

// Published L-infinity errors for the two coarsest meshes.
const Errors kAlfven25Table[2] = {{6.778e-4, 2.393e-3, 1.284e-2, 1.302e-2, 1.288e-2, 1.453e-2},
                                  {1.690e-4, 5.969e-4, 3.203e-3, 3.260e-3, 3.217e-3, 3.633e-3}};
const Errors kAlfven3Table[2] = {{1.022e-2, 2.787e-2, 2.382e-2, 1.902e-1, 1.460e-1, 1.187e-1},
                                 {2.577e-3, 7.075e-3, 6.101e-3, 4.816e-2, 3.747e-2, 2.995e-2}};

Outcome alfven_convergence(const std::string& problem, const std::vector<std::array<int, 3>>& meshes,
                           const Errors (&table)[2], double budget, DivergenceLog& div, const fs::path& out) {
  Outcome o;
  Timer timer;
  std::vector<Errors> errors;
  for (const auto& m : meshes) {
    RunConfig c;
    c.problem = problem;
    c.nx = m[0];
    c.ny = m[1];
    c.nz = m[2];
    c.output_dir = (out / fmt::format("{}_{}x{}x{}", problem, m[0], m[1], m[2])).string();
    const RunResult r = run(c, true, div.observer(c.output_dir));
    errors.push_back(alfven_errors(alfven_spec(c), r.state));
  }
  const auto orders = observed_orders(errors);
  for (int c = 0; c < 6; ++c) {
    const double p = orders[0][c];
    o.require(p >= 1.8 && p <= 2.2, fmt::format("order {} = {:.3f} in [1.8, 2.2]", kComponents[c], p));
  }
  for (std::size_t m = 0; m < meshes.size(); ++m)
    for (int c = 0; c < 6; ++c) {
      const double ratio = errors[m][c] / table[m][c];
      o.require(ratio >= 0.5 && ratio <= 2.0,
                fmt::format("{}x{}x{} {} error {:.4e} vs table {:.4e} (ratio {:.3f}) within factor 2", meshes[m][0],
                            meshes[m][1], meshes[m][2], kComponents[c], errors[m][c], table[m][c], ratio));
    }
  const double t = timer.seconds();
  o.require(t <= budget, fmt::format("runtime {:.1f} s <= {:.0f} s", t, budget));
  return o;
}

Outcome conservation(DivergenceLog& div, const fs::path& out) {
  Outcome o;
  Timer timer;
  RunConfig c;
  c.problem = "orszag_tang";
  c.nx = 32;
  c.end_time = 1e3;  // stop on the step count, not the clock
  c.max_steps = 50;
  c.energy = EnergyOption::conserve_total;
  c.write_snapshots = false;
  c.output_dir = (out / "orszag_tang_conservation").string();
  const RunResult r = run(c, true, div.observer(c.output_dir));
  const DiagnosticsRow first = measure(initial_state(r.setup).q, c.gamma);
  o.require(r.log.size() == 50, fmt::format("{} steps taken", r.log.size()));
  double mass = 0.0, energy = 0.0, mom = 0.0;
  for (const DiagnosticsRow& row : r.log) {
    mass = std::max(mass, std::abs(row.mass - first.mass) / first.mass);
    energy = std::max(energy, std::abs(row.energy - first.energy) / first.energy);
    for (int k = 0; k < 3; ++k) mom = std::max(mom, std::abs(row.momentum[k] - first.momentum[k]) / first.momentum_l1);
  }
  o.require(mass <= 1e-10, fmt::format("relative mass drift {:.3e} <= 1e-10", mass));
  o.require(energy <= 1e-10, fmt::format("relative energy drift {:.3e} <= 1e-10", energy));
  o.require(mom <= 1e-10, fmt::format("momentum drift / L1 momentum {:.3e} <= 1e-10", mom));
  const double t = timer.seconds();
  o.require(t <= 120.0, fmt::format("runtime {:.1f} s <= 120 s", t));
  return o;
}

double total_variation(const ScatterTable& t, int col) {
  double tv = 0.0;
  for (std::size_t n = 1; n < t.rows.size(); ++n) tv += std::abs(t.rows[n][col] - t.rows[n - 1][col]);
  return tv;
}

Outcome shock_tube(DivergenceLog& div, const fs::path& out) {
  Outcome o;
  Timer timer;
  RunConfig c;
  c.problem = "shock_tube";
  c.limiter = LimiterKind::minmod;
  c.nu = 0.05;
  c.output_dir = (out / "shock_tube_nu0.05").string();
  const RunResult diffused = run(c, true, div.observer(c.output_dir));
  const ScatterTable sd = shock_tube_scatter(diffused.state, c.gamma);

  RunConfig plain = c;
  plain.nu = 0.0;
  plain.output_dir = (out / "shock_tube_nu0").string();
  const RunResult undiffused = run(plain, true, div.observer(plain.output_dir));
  const ScatterTable s0 = shock_tube_scatter(undiffused.state, c.gamma);

  RunConfig ref = c;
  ref.reference = ReferenceMode::one_d;
  ref.reference_cells = 10000;
  const ScatterTable reference = reference_1d(ref);

  double num = 0.0, den = 0.0;
  for (const auto& row : sd.rows) {
    const double r = interpolate(reference, 1, row[0]);
    num += std::abs(row[1] - r);
    den += std::abs(r);
  }
  const double l1 = num / den;
  o.require(l1 <= 0.05, fmt::format("L1 scatter error in rho {:.4e} <= 0.05", l1));
  const double tv_d = total_variation(sd, 6), tv_0 = total_variation(s0, 6);
  o.require(tv_d < tv_0, fmt::format("TV(B^xi) with nu = 0.05 {:.4e} < with nu = 0 {:.4e}", tv_d, tv_0));
  const double t = timer.seconds();
  o.require(t <= 600.0, fmt::format("runtime {:.1f} s <= 600 s", t));
  return o;
}

Outcome cloud_shock(DivergenceLog& div, const fs::path& out) {
  Outcome o;
  Timer timer;
  RunConfig c;
  c.problem = "cloud_shock";
  c.nx = 100;
  c.quarter = true;
  c.nu = 0.02;
  c.output_dir = (out / "cloud_shock").string();
  double worst_div = 0.0;
  auto log_div = div.observer(c.output_dir);
  const RunResult r = run(c, true, [&](const CtState& s, const DiagnosticsRow& row) {
    log_div(s, row);
    worst_div = std::max(worst_div, row.div_scaled);
  });
  const GridSpec& g = r.setup.grid;
  o.require(g.nx == 100 && g.ny == 50 && g.nz == 50, fmt::format("mesh {}x{}x{}", g.nx, g.ny, g.nz));
  double min_rho = INFINITY, min_p = INFINITY;
  for (const DiagnosticsRow& row : r.log) {
    min_rho = std::min(min_rho, row.min_rho);
    min_p = std::min(min_p, row.min_press);
  }
  o.require(min_rho > 0.0, fmt::format("min density over all steps {:.4e} > 0", min_rho));
  o.require(min_p > 0.0, fmt::format("min pressure over all steps {:.4e} > 0", min_p));
  o.require(worst_div <= 1e-11, fmt::format("max scaled divergence {:.3e} <= 1e-11", worst_div));
  o.require(std::abs(r.state.time - 0.06) <= 1e-12, fmt::format("final time {:.12g}", r.state.time));
  const std::vector<double> want = {0.0, 0.02, 0.04, 0.06};
  bool schedule = r.snapshot_times.size() == want.size() && r.snapshots.size() == want.size();
  for (std::size_t n = 0; schedule && n < want.size(); ++n)
    schedule = std::abs(r.snapshot_times[n] - want[n]) <= 1e-12 && fs::exists(r.snapshots[n]);
  o.require(schedule, fmt::format("{} snapshots at t = 0, 0.02, 0.04, 0.06", r.snapshots.size()));
  const double t = timer.seconds();
  o.require(t <= 900.0, fmt::format("runtime {:.1f} s <= 900 s", t));
  return o;
}

// Frozen velocity u = (1,1,1) acting on a smooth periodic potential on the unit cube.
namespace frozen {

constexpr double kTwoPi = 2.0 * M_PI;

Vec3 potential(const Vec3& x) {
  return {std::sin(kTwoPi * x[1]) + 0.5 * std::cos(kTwoPi * x[2]),
          std::sin(kTwoPi * x[2]) + 0.3 * std::cos(kTwoPi * x[0]),
          std::sin(kTwoPi * x[0]) + 0.4 * std::cos(kTwoPi * x[1])};
}

Vec3 field(const Vec3& x) {
  const double s0 = std::sin(kTwoPi * x[0]), s1 = std::sin(kTwoPi * x[1]), s2 = std::sin(kTwoPi * x[2]);
  const double c0 = std::cos(kTwoPi * x[0]), c1 = std::cos(kTwoPi * x[1]), c2 = std::cos(kTwoPi * x[2]);
  return {kTwoPi * (-0.4 * s1 - c2), kTwoPi * (-0.5 * s2 - c0), kTwoPi * (-0.3 * s0 - c1)};
}

struct Setup {
  GridSpec g;
  BoundarySpec bc = BoundarySpec::uniform(BcKind::periodic);
  VelocityField u;
  PotentialField a;
};

Setup make(int n) {
  Setup s;
  s.g.nx = s.g.ny = s.g.nz = n;
  s.g.dx = s.g.dy = s.g.dz = 1.0 / n;
  s.u.u = Field(s.g, 3, 1.0);
  s.a.a = Field(s.g, 3);
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec3 v = potential(s.g.center(i, j, k));
        for (int c = 0; c < 3; ++c) s.a.a(c, i, j, k) = v[c];
      }
  s.a.fill(s.bc);
  return s;
}

double curl_error(const Setup& s, double t) {
  const Field B = curl_centered(s.a);
  double e = 0.0;
  for (int k = 0; k < s.g.nz; ++k)
    for (int j = 0; j < s.g.ny; ++j)
      for (int i = 0; i < s.g.nx; ++i) {
        Vec3 x = s.g.center(i, j, k);
        for (double& v : x) v -= t;
        const Vec3 b = field(x);
        for (int c = 0; c < 3; ++c) e = std::max(e, std::abs(B(c, i, j, k) - b[c]));
      }
  return e;
}

double max_curl(const PotentialField& a) {
  const Field B = curl_centered(a);
  const GridSpec& g = a.a.spec();
  double m = 0.0;
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i)
        m = std::max(m, std::sqrt(B(0, i, j, k) * B(0, i, j, k) + B(1, i, j, k) * B(1, i, j, k) +
                                  B(2, i, j, k) * B(2, i, j, k)));
  return m;
}

}  // namespace frozen

Outcome frozen_potential() {
  Outcome o;
  PotentialOptions opt;
  opt.limiter = LimiterKind::none;
  opt.diffusion.nu = 0.0;
  std::vector<double> err;
  for (int n : {16, 32, 64}) {
    frozen::Setup s = frozen::make(n);
    const double end = 0.25;
    const int steps = int(std::ceil(end / (0.8 * s.g.dx)));
    for (int k = 0; k < steps; ++k) s.a = strang_step(s.a, s.u, end / steps, opt, s.bc);
    err.push_back(frozen::curl_error(s, end));
  }
  for (std::size_t m = 1; m < err.size(); ++m) {
    const double p = std::log2(err[m - 1] / err[m]);
    o.require(p >= 1.9, fmt::format("curl error {:.4e} -> {:.4e}, order {:.3f} >= 1.9", err[m - 1], err[m], p));
  }
  for (LimiterKind lim : {LimiterKind::none, LimiterKind::mc}) {
    PotentialOptions lo = opt;
    lo.limiter = lim;
    frozen::Setup s = frozen::make(32);
    const double b0 = frozen::max_curl(s.a);
    for (int k = 0; k < 200; ++k) s.a = strang_step(s.a, s.u, 0.8 * s.g.dx, lo, s.bc);
    const double growth = frozen::max_curl(s.a) / b0 - 1.0;
    o.require(growth <= 0.01,
              fmt::format("200 steps at Courant 0.8 ({}): max|curl A| growth {:.3e} <= 1%", to_string(lim), growth));
  }
  return o;
}

Outcome identities() {
  Outcome o;
  std::mt19937_64 rng(20240901);
  std::uniform_real_distribution<double> U(-1.0, 1.0);

  double div_worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    GridSpec g;
    g.nx = 4 + int(rng() % 9);
    g.ny = 4 + int(rng() % 9);
    g.nz = 4 + int(rng() % 9);
    g.dx = 0.05 + 0.1 * std::abs(U(rng));
    g.dy = 0.05 + 0.1 * std::abs(U(rng));
    g.dz = 0.05 + 0.1 * std::abs(U(rng));
    PotentialField A{Field(g, 3), {}};
    for (double& v : A.a.values()) v = U(rng);
    A.fill(BoundarySpec::uniform(BcKind::periodic));
    div_worst = std::max(div_worst, divergence_report(curl_centered(A)).scaled);
  }
  o.require(div_worst <= 1e-12, fmt::format("div(curl A) on 100 random fields {:.3e} <= 1e-12 (scaled)", div_worst));

  auto random_state = [&]() {
    Primitive w;
    w.rho = 0.1 + 2.0 * std::abs(U(rng));
    w.vel = {U(rng), U(rng), U(rng)};
    w.press = 0.05 + 2.0 * std::abs(U(rng));
    w.bfield = {1.5 * U(rng), 1.5 * U(rng), 1.5 * U(rng)};
    return prim_to_state(w);
  };
  double lr = 0.0, comp = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const State ql = random_state(), qr = random_state();
    const int axis = t % 3;
    const Eigensystem e = eigensystem(ql, qr, axis);
    for (int a = 0; a < kNumVars; ++a)
      for (int b = 0; b < kNumVars; ++b) {
        double s = 0.0;
        for (int m = 0; m < kNumVars; ++m) s += e.left[a][m] * e.right[b][m];
        lr = std::max(lr, std::abs(s - (a == b ? 1.0 : 0.0)));
      }
    const WaveFan fan = fwave_decompose(ql, qr, axis);
    const State fl = flux(ql, axis), fr = flux(qr, axis);
    double scale = 0.0, diff = 0.0;
    for (int m = 0; m < kNumVars; ++m) {
      double sum = 0.0;
      for (int p = 0; p < kNumVars; ++p) sum += fan.fwaves[p][m];
      scale = std::max(scale, std::abs(fr[m] - fl[m]));
      diff = std::max(diff, std::abs(sum - (fr[m] - fl[m])));
    }
    if (scale > 0.0) comp = std::max(comp, diff / scale);
  }
  o.require(lr <= 1e-12, fmt::format("max |L R - I| over 1000 states {:.3e} <= 1e-12", lr));
  o.require(comp <= 1e-12, fmt::format("f-wave completeness over 1000 pairs {:.3e} <= 1e-12 (relative)", comp));
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the constrained-transport MHD solver"};
  std::string out_dir = "acceptance_out";
  std::vector<std::string> only;
  app.add_option("--output-dir", out_dir, "Directory for run output");
  app.add_option("--only", only, "Run only these criteria")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::string> names = {"alfven25_convergence", "alfven3d_convergence", "conservation",
                                          "shock_tube",           "cloud_shock",          "frozen_potential",
                                          "operator_identities",  "divergence_invariant"};
  const std::set<std::string> selected(only.begin(), only.end());
  for (const auto& s : selected)
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      fmt::print(stderr, "unknown criterion '{}'\n", s);
      return 2;
    }
  auto wanted = [&](const std::string& n) { return selected.empty() || selected.count(n) > 0; };

  const fs::path out(out_dir);
  fs::create_directories(out);
  DivergenceLog div;
  int failures = 0;
  auto report = [&](const std::string& name, const std::function<Outcome()>& body) {
    if (!wanted(name)) return;
    Timer t;
    Outcome o;
    try {
      o = body();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    for (const auto& n : o.notes) fmt::print("    {}\n", n);
    fmt::print("{} {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", name, t.seconds());
    std::fflush(stdout);
    if (!o.pass) ++failures;
  };

  report("operator_identities", identities);
  report("frozen_potential", frozen_potential);
  report("conservation", [&] { return conservation(div, out); });
  report("alfven25_convergence", [&] {
    return alfven_convergence("alfven25", {{64, 128, 1}, {128, 256, 1}}, kAlfven25Table, 300.0, div, out);
  });
  report("alfven3d_convergence", [&] {
    return alfven_convergence("alfven", {{16, 32, 32}, {32, 64, 64}}, kAlfven3Table, 600.0, div, out);
  });
  report("shock_tube", [&] { return shock_tube(div, out); });
  report("cloud_shock", [&] { return cloud_shock(div, out); });
  report("divergence_invariant", [&] {
    Outcome o;
    if (div.runs.empty()) {
      // Nothing else ran: use a short Orszag-Tang run.
      RunConfig c;
      c.problem = "orszag_tang";
      c.nx = 16;
      c.max_steps = 20;
      run(c, false, div.observer("orszag_tang_16"));
    }
    o.require(div.steps > 0, fmt::format("{} steps over {} runs checked", div.steps, div.runs.size()));
    o.require(div.worst <= 1e-11, fmt::format("max scaled |div B| {:.3e} <= 1e-11", div.worst));
    return o;
  });

  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
