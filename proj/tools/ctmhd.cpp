#include <CLI11.hpp>
#include <fmt/core.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <omp.h>
#include <sstream>

#include "ctmhd/errors.hpp"
#include "ctmhd/runner.hpp"
#include "ctmhd/snapshot.hpp"

namespace {

struct Overrides {
  std::string output_dir, limiter, transverse, energy;
  double cfl = -1.0, nu = -1.0;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

void add_overrides(CLI::App* app, Overrides& o) {
  app->add_option("--output-dir", o.output_dir, "Directory for snapshots and CSV output");
  app->add_option("--cfl", o.cfl, "Target Courant number in (0, 1]");
  app->add_option("--limiter", o.limiter, "minmod, mc, superbee, vanleer or none");
  app->add_option("--nu", o.nu, "Potential diffusion coefficient in [0, 0.5]");
  app->add_option("--transverse", o.transverse, "none, transverse or double");
  app->add_option("--energy-option", o.energy, "1 (conserve total energy) or 2 (preserve pressure)");
  app->add_option("--seed", o.seed, "Seed for randomized checks")->each([&](const std::string&) { o.seed_set = true; });
}

ctmhd::RunConfig load(const std::string& path, const Overrides& o) {
  ctmhd::RunConfig cfg = ctmhd::load_config(path);
  if (!o.output_dir.empty()) cfg.set("output_dir", o.output_dir);
  if (o.cfl >= 0.0) cfg.set("cfl", fmt::format("{:.17g}", o.cfl));
  if (!o.limiter.empty()) cfg.set("limiter", o.limiter);
  if (o.nu >= 0.0) cfg.set("nu", fmt::format("{:.17g}", o.nu));
  if (!o.transverse.empty()) cfg.set("transverse", o.transverse);
  if (!o.energy.empty()) cfg.set("energy_option", o.energy);
  if (o.seed_set) cfg.seed = o.seed;
  cfg.validate();
  return cfg;
}

std::array<int, 3> parse_mesh(const std::string& s) {
  std::array<int, 3> m{1, 1, 1};
  std::stringstream ss(s);
  std::string part;
  int n = 0;
  while (std::getline(ss, part, 'x')) {
    if (n == 3) throw ctmhd::ConfigError("bad mesh '" + s + "'");
    try {
      m[n++] = std::stoi(part);
    } catch (const std::exception&) {
      throw ctmhd::ConfigError("bad mesh '" + s + "'");
    }
  }
  if (n < 2) throw ctmhd::ConfigError("bad mesh '" + s + "', expected NXxNY[xNZ]");
  return m;
}

void set_threads() {
  if (const char* env = std::getenv("CTMHD_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }
}

void print_summary(const ctmhd::RunResult& r) {
  double div = 0.0;
  for (const auto& row : r.log) div = std::max(div, row.div_scaled);
  fmt::print("{}: {} steps to t = {:.6g} in {:.2f} s, max scaled div B = {:.3e}\n", r.setup.name, r.log.size(),
             r.state.time, r.wall_seconds, div);
  for (const auto& s : r.snapshots) fmt::print("  wrote {}\n", s);
}

int diff_snapshots(const std::string& a, const std::string& b, double tol) {
  const ctmhd::Snapshot sa = ctmhd::read_snapshot(a);
  const ctmhd::Snapshot sb = ctmhd::read_snapshot(b);
  if (!(sa.grid == sb.grid) || sa.names != sb.names)
    throw ctmhd::ConfigError("snapshots have different meshes or variables");
  double worst = 0.0;
  fmt::print("time {:.17g} vs {:.17g}\n", sa.time, sb.time);
  for (const auto& name : sa.names) {
    const auto& va = sa.variable(name);
    const auto& vb = sb.variable(name);
    double d = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) d = std::max(d, std::abs(va[i] - vb[i]));
    worst = std::max(worst, d);
    fmt::print("{:>4} max |diff| = {:.6e}\n", name, d);
  }
  return worst <= tol ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unstaggered constrained-transport MHD solver"};
  app.require_subcommand(1);
  Overrides o;
  std::string config, snap_a, snap_b;
  std::vector<std::string> meshes;
  double tol = 0.0;

  auto* run = app.add_subcommand("run", "Advance a problem to its end time");
  run->add_option("config", config, "Configuration file")->required();
  add_overrides(run, o);

  auto* conv = app.add_subcommand("convergence", "Alfven-wave error table over a list of meshes");
  conv->add_option("config", config, "Configuration file")->required();
  conv->add_option("--meshes", meshes, "Meshes as NXxNY or NXxNYxNZ")->required();
  add_overrides(conv, o);

  auto* ref = app.add_subcommand("reference1d", "Fine-mesh 1D solution of the shock-tube Riemann problem");
  ref->add_option("config", config, "Configuration file")->required();
  add_overrides(ref, o);

  auto* diff = app.add_subcommand("diff", "Compare two snapshots");
  diff->add_option("snapA", snap_a)->required();
  diff->add_option("snapB", snap_b)->required();
  diff->add_option("--tol", tol, "Largest accepted absolute difference");

  CLI11_PARSE(app, argc, argv);
  set_threads();

  try {
    if (*run) {
      print_summary(ctmhd::run(load(config, o)));
    } else if (*conv) {
      ctmhd::RunConfig cfg = load(config, o);
      std::vector<std::array<int, 3>> list;
      for (const auto& m : meshes) list.push_back(parse_mesh(m));
      const ctmhd::ConvergenceTable t = ctmhd::convergence(cfg, list);
      const std::string csv = t.to_csv();
      std::filesystem::create_directories(cfg.output_dir);
      std::ofstream(std::filesystem::path(cfg.output_dir) / "convergence.csv") << csv;
      fmt::print("{}", csv);
    } else if (*ref) {
      ctmhd::RunConfig cfg = load(config, o);
      cfg.problem = "shock_tube";
      cfg.reference = ctmhd::ReferenceMode::one_d;
      print_summary(ctmhd::run(cfg));
    } else if (*diff) {
      return diff_snapshots(snap_a, snap_b, tol);
    }
  } catch (const ctmhd::ConfigError& e) {
    fmt::print(stderr, "configuration error: {}\n", e.what());
    return 1;
  } catch (const ctmhd::AdmissibilityError& e) {
    fmt::print(stderr, "admissibility failure: {}\n", e.what());
    return 2;
  } catch (const ctmhd::StepRejected& e) {
    fmt::print(stderr, "admissibility failure: {}\n", e.what());
    return 2;
  }
  return 0;
}
