#include "ctmhd/runner.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "ctmhd/snapshot.hpp"

namespace ctmhd {

AlfvenSpec alfven_spec(const RunConfig& cfg) {
  AlfvenSpec s;
  const double a = std::atan(0.5);
  s.phi = cfg.phi.value_or(a);
  s.theta = cfg.theta.value_or(cfg.problem == "alfven25" ? 0.0 : a);
  return s;
}

ProblemSetup make_setup(const RunConfig& cfg) {
  cfg.validate();
  ProblemSetup s;
  if (cfg.problem == "alfven25") {
    const AlfvenSpec spec = alfven_spec(cfg);
    s = alfven_init(spec, alfven_grid(spec, cfg.nx, cfg.ny, 1));
  } else if (cfg.problem == "alfven") {
    const AlfvenSpec spec = alfven_spec(cfg);
    s = alfven_init(spec, alfven_grid(spec, cfg.nx, cfg.ny, cfg.nz));
  } else if (cfg.problem == "shock_tube") {
    s = cfg.reference == ReferenceMode::one_d ? shock_tube_1d_init(cfg.reference_cells)
                                              : rotated_shock_tube_init(rotated_shock_tube_grid(cfg.scale));
  } else if (cfg.problem == "orszag_tang") {
    s = orszag_tang_init(orszag_tang_grid(cfg.nx));
  } else if (cfg.problem == "cloud_shock") {
    s = cloud_shock_init(cloud_shock_grid(cfg.nx, cfg.quarter), cfg.quarter);
  }
  if (cfg.end_time) {
    s.end_time = *cfg.end_time;
    s.output_times = {s.end_time};
  }
  if (!cfg.output_times.empty()) s.output_times = cfg.output_times;
  std::sort(s.output_times.begin(), s.output_times.end());
  if (cfg.limiter) s.limiter = *cfg.limiter;
  if (cfg.nu) s.nu = *cfg.nu;
  return s;
}

CtConfig make_ct_config(const RunConfig& cfg, const ProblemSetup& setup) {
  CtConfig c;
  c.fv.limiter = setup.limiter;
  c.fv.transverse = cfg.transverse;
  c.fv.second_order = cfg.second_order;
  c.fv.entropy_fix = cfg.entropy_fix;
  c.fv.gamma = cfg.gamma;
  c.potential.limiter = setup.limiter;
  c.potential.diffusion.nu = setup.nu;
  c.potential.diffusion.eps = cfg.eps;
  c.potential.diffusion.validate();
  c.energy = cfg.energy;
  c.mode = cfg.reference == ReferenceMode::scalar_a3 ? PotentialMode::scalar_a3 : PotentialMode::full;
  c.q_bc = setup.q_bc;
  c.a_bc = setup.a_bc;
  return c;
}

DiagnosticsRow measure(const Field& q, double gamma) {
  const GridSpec& g = q.spec();
  DiagnosticsRow r;
  r.min_rho = std::numeric_limits<double>::infinity();
  r.min_press = std::numeric_limits<double>::infinity();
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        State s;
        for (int m = 0; m < kNumVars; ++m) s[m] = q(m, i, j, k);
        r.mass += s[RHO];
        for (int c = 0; c < 3; ++c) {
          r.momentum[c] += s[MX + c];
          r.momentum_l1 += std::abs(s[MX + c]);
        }
        r.energy += s[ENER];
        r.min_rho = std::min(r.min_rho, s[RHO]);
        r.min_press = std::min(r.min_press, pressure(s, gamma));
      }
  return r;
}

namespace {

FvResult fv_only_step(const Field& q, double& dt, const CtConfig& c) {
  for (int retry = 0;; ++retry) {
    try {
      return mhd_step(q, dt, c.q_bc, c.fv);
    } catch (const StepRejected&) {
      if (retry >= c.max_retries) throw;
      dt *= 0.5;
    }
  }
}

std::string csv_header() {
  return "step,time,dt,courant,max_div,max_b,div_scaled,mass,mom_x,mom_y,mom_z,mom_l1,energy,min_rho,min_press,"
         "retries\n";
}

std::string csv_row(const DiagnosticsRow& r) {
  return fmt::format("{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},"
                     "{:.17g},{:.17g},{:.17g},{}\n",
                     r.step, r.time, r.dt, r.courant, r.max_div, r.max_b, r.div_scaled, r.mass, r.momentum[0],
                     r.momentum[1], r.momentum[2], r.momentum_l1, r.energy, r.min_rho, r.min_press, r.retries);
}

}  // namespace

RunResult run(const RunConfig& cfg, bool write_files,
              const std::function<void(const CtState&, const DiagnosticsRow&)>& observer) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  res.setup = make_setup(cfg);
  const ProblemSetup& setup = res.setup;
  const CtConfig ctc = make_ct_config(cfg, setup);
  res.state = initial_state(setup);
  CtState& st = res.state;
  const bool one_d = cfg.reference == ReferenceMode::one_d;

  namespace fs = std::filesystem;
  std::ofstream diag;
  if (write_files) {
    fs::create_directories(cfg.output_dir);
    diag.open(fs::path(cfg.output_dir) / "diagnostics.csv");
    diag << csv_header();
  }
  std::size_t next_out = 0;
  auto emit_snapshots = [&]() {
    while (next_out < setup.output_times.size() &&
           st.time >= setup.output_times[next_out] - 1e-12 * std::max(1.0, setup.output_times[next_out])) {
      if (write_files && cfg.write_snapshots) {
        const std::string path =
            (fs::path(cfg.output_dir) / fmt::format("{}_t{:.4f}.snap", setup.name, setup.output_times[next_out]))
                .string();
        write_snapshot(path, make_snapshot(st));
        res.snapshots.push_back(path);
      }
      res.snapshot_times.push_back(st.time);
      ++next_out;
    }
  };
  emit_snapshots();

  const double end = setup.end_time;
  const double tol = 1e-12 * std::max(1.0, end);
  int step = 0;
  try {
    while (st.time < end - tol && (cfg.max_steps == 0 || step < cfg.max_steps)) {
      double dt = suggest_dt(st.q, cfg.cfl, cfg.gamma);
      double target = end;
      if (next_out < setup.output_times.size()) target = std::min(target, setup.output_times[next_out]);
      if (st.time + dt > target - tol) dt = target - st.time;
      DiagnosticsRow row;
      if (one_d) {
        FvResult fv = fv_only_step(st.q, dt, ctc);
        st.q = std::move(fv.qstar);
        st.time += dt;
        row = measure(st.q, cfg.gamma);
        row.courant = fv.stats.max_courant;
      } else {
        const CtStepReport rep = ct_advance(st, dt, ctc);
        row = measure(st.q, cfg.gamma);
        row.dt = rep.dt;
        row.courant = rep.fv.max_courant;
        row.max_div = rep.div.max_div;
        row.max_b = rep.div.max_b;
        row.div_scaled = rep.div.scaled;
        row.retries = rep.retries;
        dt = rep.dt;
      }
      row.step = ++step;
      row.time = st.time;
      row.dt = dt;
      res.log.push_back(row);
      if (diag.is_open()) {
        diag << csv_row(row);
        diag.flush();
      }
      if (observer) observer(st, row);
      emit_snapshots();
    }
  } catch (const AdmissibilityError& e) {
    const auto c = e.cell();
    throw AdmissibilityError(fmt::format("{} at cell ({}, {}, {}), t = {:.9g}, step {}", e.what(), c[0], c[1], c[2],
                                         st.time, step + 1),
                             c);
  }
  if (write_files) {
    write_snapshot((fs::path(cfg.output_dir) / "final.snap").string(), make_snapshot(st));
    if (cfg.problem == "alfven" || cfg.problem == "alfven25") {
      const auto e = alfven_errors(alfven_spec(cfg), st);
      std::ofstream f(fs::path(cfg.output_dir) / "errors.csv");
      f << "time,linf_B1,linf_B2,linf_B3,linf_A1,linf_A2,linf_A3\n"
        << fmt::format("{:.17g},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e},{:.6e}\n", st.time, e[0], e[1], e[2], e[3], e[4],
                       e[5]);
    } else if (cfg.problem == "shock_tube") {
      std::ofstream f(fs::path(cfg.output_dir) / (one_d ? "reference1d.csv" : "scatter.csv"));
      f << shock_tube_scatter(st, cfg.gamma).to_csv();
    }
  }
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

ErrorNorms error_norms(const Field& numeric, int cn, const Field& exact, int ce) {
  const GridSpec& a = numeric.spec();
  const GridSpec& b = exact.spec();
  if (a.nx != b.nx || a.ny != b.ny || a.nz != b.nz) throw ConfigError("error_norms: mesh mismatch");
  ErrorNorms e;
  for (int k = 0; k < a.nz; ++k)
    for (int j = 0; j < a.ny; ++j)
      for (int i = 0; i < a.nx; ++i) {
        const double d = std::abs(numeric(cn, i, j, k) - exact(ce, i, j, k));
        e.linf = std::max(e.linf, d);
        e.l1 += d;
      }
  e.l1 /= double(a.cells());
  return e;
}

std::array<double, 6> alfven_errors(const AlfvenSpec& spec, const CtState& state) {
  const AlfvenExact ex = alfven_exact(spec, state.time, state.q.spec());
  std::array<double, 6> e{};
  for (int c = 0; c < 3; ++c) {
    e[c] = error_norms(state.q, BX + c, ex.b, c).linf;
    e[3 + c] = error_norms(state.A.a, c, ex.a.a, c).linf;
  }
  return e;
}

std::vector<std::array<double, 6>> observed_orders(const std::vector<std::array<double, 6>>& errors) {
  std::vector<std::array<double, 6>> out;
  for (std::size_t m = 1; m < errors.size(); ++m) {
    std::array<double, 6> o{};
    for (int c = 0; c < 6; ++c) {
      const double a = errors[m - 1][c], b = errors[m][c];
      o[c] = (a > 0.0 && b > 0.0) ? std::log2(a / b) : std::numeric_limits<double>::quiet_NaN();
    }
    out.push_back(o);
  }
  return out;
}

ConvergenceTable convergence(const RunConfig& cfg, const std::vector<std::array<int, 3>>& meshes) {
  if (cfg.problem != "alfven" && cfg.problem != "alfven25")
    throw ConfigError("convergence: problem '" + cfg.problem + "' has no exact solution");
  const auto t0 = std::chrono::steady_clock::now();
  ConvergenceTable t;
  const AlfvenSpec spec = alfven_spec(cfg);
  for (const auto& m : meshes) {
    RunConfig c = cfg;
    c.nx = m[0];
    c.ny = m[1];
    c.nz = m[2];
    const RunResult r = run(c, false);
    t.meshes.push_back(m);
    t.errors.push_back(alfven_errors(spec, r.state));
  }
  t.orders = observed_orders(t.errors);
  t.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return t;
}

std::string ConvergenceTable::to_csv() const {
  static const char* names[6] = {"B1", "B2", "B3", "A1", "A2", "A3"};
  std::string s = "mesh";
  for (auto n : names) s += fmt::format(",linf_{}", n);
  for (auto n : names) s += fmt::format(",order_{}", n);
  s += "\n";
  for (std::size_t m = 0; m < meshes.size(); ++m) {
    s += fmt::format("{}x{}x{}", meshes[m][0], meshes[m][1], meshes[m][2]);
    for (double e : errors[m]) s += fmt::format(",{:.6e}", e);
    for (int c = 0; c < 6; ++c) {
      if (m == 0 || std::isnan(orders[m - 1][c]))
        s += ",—";
      else
        s += fmt::format(",{:.4f}", orders[m - 1][c]);
    }
    s += "\n";
  }
  return s;
}

ScatterTable shock_tube_scatter(const CtState& state, double gamma) {
  const GridSpec& g = state.q.spec();
  const bool aligned = g.ny == 1 && g.nz == 1;
  const RotationSpec rot = aligned ? RotationSpec{} : shock_tube_rotation();
  const Mat3 f = rot.forward();
  ScatterTable t;
  t.rows.reserve(g.cells());
  for (int k = 0; k < g.nz; ++k)
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        State s;
        for (int m = 0; m < kNumVars; ++m) s[m] = state.q(m, i, j, k);
        const Vec3 x = g.center(i, j, k);
        const Vec3 u{s[MX] / s[RHO], s[MY] / s[RHO], s[MZ] / s[RHO]};
        const Vec3 b{s[BX], s[BY], s[BZ]};
        std::array<double, 9> row{};
        row[0] = f[0][0] * x[0] + f[0][1] * x[1] + f[0][2] * x[2];
        row[1] = s[RHO];
        for (int c = 0; c < 3; ++c) {
          row[2 + c] = f[c][0] * u[0] + f[c][1] * u[1] + f[c][2] * u[2];
          row[6 + c] = f[c][0] * b[0] + f[c][1] * b[1] + f[c][2] * b[2];
        }
        row[5] = pressure(s, gamma);
        t.rows.push_back(row);
      }
  std::stable_sort(t.rows.begin(), t.rows.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  return t;
}

std::string ScatterTable::to_csv() const {
  std::string s = "xi,rho,u_xi,u_eta,u_zeta,p,b_xi,b_eta,b_zeta\n";
  for (const auto& r : rows)
    s += fmt::format("{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g}\n", r[0], r[1], r[2],
                     r[3], r[4], r[5], r[6], r[7], r[8]);
  return s;
}

ScatterTable reference_1d(const RunConfig& cfg) {
  RunConfig c = cfg;
  c.problem = "shock_tube";
  c.reference = ReferenceMode::one_d;
  const RunResult r = run(c, false);
  return shock_tube_scatter(r.state, c.gamma);
}

double interpolate(const ScatterTable& t, int col, double xi) {
  const auto& rows = t.rows;
  if (rows.empty()) return 0.0;
  if (xi <= rows.front()[0]) return rows.front()[col];
  if (xi >= rows.back()[0]) return rows.back()[col];
  auto it = std::lower_bound(rows.begin(), rows.end(), xi, [](const auto& r, double v) { return r[0] < v; });
  const auto& hi = *it;
  const auto& lo = *(it - 1);
  const double w = (xi - lo[0]) / (hi[0] - lo[0]);
  return (1.0 - w) * lo[col] + w * hi[col];
}

}  // namespace ctmhd
