#include "eulerperm/cli.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eulerperm/axisym.hpp"
#include "eulerperm/biot_savart.hpp"
#include "eulerperm/config.hpp"
#include "eulerperm/constraint.hpp"
#include "eulerperm/error.hpp"
#include "eulerperm/simd/kernels.hpp"
#include "eulerperm/snapshot.hpp"
#include "eulerperm/solver.hpp"
#include "eulerperm/spectral.hpp"
#include "eulerperm/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace eulerperm {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// Files written by one command; becomes the manifest inventory.
class Inventory {
 public:
  explicit Inventory(fs::path dir) : dir_(std::move(dir)) {}
  const fs::path& dir() const { return dir_; }
  fs::path add(const std::string& name) {
    names_.push_back(name);
    return dir_ / name;
  }
  json to_json() const {
    json files = json::array();
    for (const auto& name : names_) {
      const fs::path p = dir_ / name;
      files.push_back({{"path", name}, {"bytes", fs::exists(p) ? static_cast<std::int64_t>(fs::file_size(p)) : -1}});
    }
    return files;
  }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

void write_manifest(Inventory& inv, json body, double seconds) {
  const fs::path path = inv.add("manifest.json");
  body["tool"] = "eulerperm";
  body["version"] = kVersion;
  body["started_utc"] = utc_now();
  body["wall_clock_seconds"] = seconds;
  body["simd"] = std::string(simd::kernels().name);
  body["threads"] = omp_get_max_threads();
  body["files"] = inv.to_json();
  std::ofstream out(path);
  out << body.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

json grid_json(int n, double L) { return {{"n", n}, {"L", L}, {"h", L / n}}; }

struct FamilyFlags {
  std::optional<std::string> family;
  std::optional<double> amplitude, width, ring_radius, ring_offset, perturbation;
  bool mirror = false;

  void attach(CLI::App* app) {
    app->add_option("--family", family, "gaussian | ring | perturbed (run also accepts zero | file)");
    app->add_option("--amplitude", amplitude, "Family amplitude A");
    app->add_option("--width", width, "Family width w");
    app->add_option("--ring-radius", ring_radius, "Ring radius R");
    app->add_option("--ring-offset", ring_offset, "Ring offset z0 along sigma");
    app->add_option("--perturbation", perturbation, "Perturbation size epsilon");
    app->add_flag("--mirror", mirror, "Add the sigma-mirror image (ring family)");
  }
  void apply(SolverConfig& cfg) const {
    if (family) cfg.family = *family;
    if (amplitude) cfg.params.amplitude = *amplitude;
    if (width) cfg.params.width = *width;
    if (ring_radius) cfg.params.ring_radius = *ring_radius;
    if (ring_offset) cfg.params.ring_offset = *ring_offset;
    if (perturbation) cfg.params.perturbation = *perturbation;
    if (mirror) cfg.params.mirror = true;
  }
};

struct GridFlags {
  std::optional<int> n;
  std::optional<double> L;
  void attach(CLI::App* app) {
    app->add_option("--n", n, "Grid points per axis (even, >= 4)");
    app->add_option("--L", L, "Box side length");
  }
  void apply(SolverConfig& cfg) const {
    if (n) cfg.n = *n;
    if (L) cfg.box_length = *L;
  }
};

// ---------------------------------------------------------------- init

struct InitArgs {
  std::string config;
  GridFlags grid;
  FamilyFlags fam;
  std::string out = "init_out";
  bool with_fields = false;
};

int cmd_init(const InitArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  SolverConfig cfg = a.config.empty() ? SolverConfig{} : load_config(a.config);
  a.grid.apply(cfg);
  a.fam.apply(cfg);
  if (!a.fam.family && a.config.empty()) throw InvalidInput("init needs --family (gaussian | ring | perturbed)");
  const InitialFamily family = parse_family(cfg.family);
  cfg.validate();

  const Grid g(cfg.n, cfg.box_length);
  const ScalarField w1 = sign_condition_data(family, cfg.params, g);
  const ConstraintResidual cr = constraint_residual(w1);
  const double lam = lambda_spectral(w1);

  fs::create_directories(a.out);
  Inventory inv(a.out);
  SnapshotHeader h{cfg.n, cfg.box_length, "w1", 1, w1.flags(), 0.0};
  write_snapshot(inv.add("w1.field"), w1, h);

  json report = {{"constraint_residual_physical", cr.physical},
                 {"constraint_residual_fourier", cr.fourier},
                 {"lambda_periodic", lam},
                 {"sign_condition_violation", sign_condition_violation(w1)}};
  // Vorticity is local, so its mirror residual is not polluted by periodic images.
  if (cfg.params.mirror)
    report["sigma_mirror_residual"] = sampled_mirror_residual(reconstruct_vorticity(w1), sigma_unit(), -1);
  if (a.with_fields) {
    const VectorField u = velocity_from_w1(w1);
    const VectorField om = reconstruct_vorticity(w1);
    for (int c = 0; c < 3; ++c) {
      write_snapshot(inv.add("u" + std::to_string(c + 1) + ".field"), u[c],
                     {cfg.n, cfg.box_length, "u", c + 1, SymmetryFlag::permutation, 0.0});
      write_snapshot(inv.add("omega" + std::to_string(c + 1) + ".field"), om[c],
                     {cfg.n, cfg.box_length, "omega", c + 1, SymmetryFlag::none, 0.0});
    }
  }
  for (const auto& [k, v] : report.items()) std::cout << k << ": " << fmt(v.get<double>()) << '\n';
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(inv, {{"command", "init"}, {"config", config_to_json(cfg)}, {"grid", grid_json(cfg.n, cfg.box_length)},
                       {"report", report}},
                 secs);
  return kExitOk;
}

// ---------------------------------------------------------------- run

struct RunArgs {
  std::string config;
  GridFlags grid;
  FamilyFlags fam;
  std::optional<double> dt, cfl, t_end;
  std::optional<bool> dealias;
  std::optional<int> diagnostics_every, snapshot_every, reproject_every;
  std::optional<std::string> mode, initial_file;
  std::string out = "run_out";
};

const char* kCsvHeader =
    "step,t,lambda,l2_velocity,hminus1_w1,linf_w1,bkm_integral,symmetry_residual_max,"
    "constraint_residual_physical,constraint_residual_fourier,divergence_residual";

std::string csv_row(const DiagnosticsRecord& r, bool gap) {
  std::ostringstream s;
  s << r.step << ',' << fmt(r.t) << ',' << fmt(r.lambda) << ',' << fmt(r.l2_velocity) << ',' << fmt(r.hminus1_w1)
    << ',' << fmt(r.linf_w1) << ',' << fmt(r.bkm_integral) << ',' << fmt(r.symmetry_residual_max) << ','
    << fmt(r.constraint_residual_physical) << ',' << fmt(r.constraint_residual_fourier) << ','
    << fmt(r.divergence_residual);
  if (gap) s << ',' << fmt(r.formulation_gap.value_or(0.0));
  return s.str();
}

std::string step_name(int step) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%06d", step);
  return buf;
}

int cmd_run(const RunArgs& a) {
  const auto start = std::chrono::steady_clock::now();
  SolverConfig cfg = a.config.empty() ? SolverConfig{} : load_config(a.config);
  a.grid.apply(cfg);
  a.fam.apply(cfg);
  if (a.dt) cfg.dt = *a.dt;
  if (a.cfl) {
    cfg.cfl_safety = *a.cfl;
    if (!a.dt) cfg.dt.reset();
  }
  if (a.t_end) cfg.t_end = *a.t_end;
  if (a.dealias) cfg.dealias = *a.dealias;
  if (a.diagnostics_every) cfg.diagnostics_every = *a.diagnostics_every;
  if (a.snapshot_every) cfg.snapshot_every = *a.snapshot_every;
  if (a.reproject_every) cfg.reproject_every = *a.reproject_every;
  if (a.mode) cfg.mode = parse_formulation(*a.mode);
  if (a.initial_file) cfg.initial_file = *a.initial_file;
  cfg.validate();
  TrajectoryState init = initial_state(cfg);

  fs::create_directories(a.out);
  Inventory inv(a.out);
  const bool gap = cfg.mode == Formulation::both;
  std::ofstream csv(inv.add("diagnostics.csv"));
  csv << kCsvHeader << (gap ? ",formulation_gap" : "") << '\n';

  RunObserver obs;
  obs.on_record = [&](const DiagnosticsRecord& r) { csv << csv_row(r, gap) << '\n'; };
  obs.on_snapshot = [&](const TrajectoryState& s, int step) {
    if (s.w1) {
      write_snapshot(inv.add("snap_" + step_name(step) + "_w1.field"), *s.w1,
                     {cfg.n, cfg.box_length, "w1", 1, s.w1->flags(), s.t});
    }
    if (s.omega && !s.w1) {
      for (int c = 0; c < 3; ++c)
        write_snapshot(inv.add("snap_" + step_name(step) + "_omega" + std::to_string(c + 1) + ".field"), (*s.omega)[c],
                       {cfg.n, cfg.box_length, "omega", c + 1, SymmetryFlag::none, s.t});
    }
  };
  const RunResult res = run_from(cfg, std::move(init), obs);
  csv.close();

  const DiagnosticsRecord& first = res.records.front();
  const DiagnosticsRecord& last = res.records.back();
  auto drift = [](double a0, double a1) { return a0 != 0.0 ? std::abs(a1 / a0 - 1.0) : std::abs(a1); };
  json summary = {{"status", res.completed ? "completed" : "breakdown"},
                  {"message", res.message},
                  {"steps", res.steps},
                  {"reprojections", res.reprojections},
                  {"t_final", last.t},
                  {"hminus1_w1_drift", drift(first.hminus1_w1, last.hminus1_w1)},
                  {"l2_velocity_drift", drift(first.l2_velocity, last.l2_velocity)},
                  {"bkm_integral", last.bkm_integral},
                  {"lambda_initial", first.lambda},
                  {"lambda_final", last.lambda}};
  double sym = 0.0, g = 0.0;
  for (const auto& r : res.records) {
    sym = std::max(sym, r.symmetry_residual_max);
    if (r.formulation_gap) g = std::max(g, *r.formulation_gap);
  }
  summary["symmetry_residual_max"] = sym;
  if (gap) summary["formulation_gap_max"] = g;

  std::ostringstream text;
  for (const auto& [k, v] : summary.items())
    text << k << ": " << (v.is_string() ? v.get<std::string>() : v.is_number_float() ? fmt(v.get<double>()) : v.dump())
         << '\n';
  std::cout << text.str();
  {
    std::ofstream s(inv.add("summary.txt"));
    s << text.str();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  write_manifest(inv, {{"command", "run"}, {"config", config_to_json(cfg)}, {"grid", grid_json(cfg.n, cfg.box_length)},
                       {"summary", summary}},
                 secs);
  if (!res.completed) std::cerr << "numerical breakdown: " << res.message << '\n';
  return res.completed ? kExitOk : kExitBreakdown;
}

// ---------------------------------------------------------------- verify

int cmd_verify(bool full, const std::string& out) {
  const VerifyLevel level = full ? VerifyLevel::full : VerifyLevel::fast;
  const VerifyReport rep = run_verification(level, [](const CheckResult& c) {
    std::printf("%-4s  %-20s %-36s residual %.3e  tol %.1e%s%s\n", c.pass ? "PASS" : "FAIL", c.suite.c_str(),
                c.name.c_str(), c.residual, c.tolerance, c.detail.empty() ? "" : "  ", c.detail.c_str());
    std::fflush(stdout);
  });
  std::size_t failed = 0;
  json table = json::array();
  for (const auto& c : rep.checks) {
    failed += c.pass ? 0 : 1;
    table.push_back({{"suite", c.suite}, {"name", c.name}, {"residual", std::isfinite(c.residual) ? json(c.residual) : json()},
                     {"tolerance", c.tolerance}, {"pass", c.pass}, {"detail", c.detail}});
  }
  std::printf("verify %s: %zu checks, %zu failed, %.1f s\n", to_string(level).c_str(), rep.checks.size(), failed,
              rep.seconds);
  if (!out.empty()) {
    fs::create_directories(out);
    Inventory inv(out);
    write_manifest(inv, {{"command", "verify"}, {"level", to_string(level)}, {"checks", table}, {"all_passed", rep.all_passed()}},
                   rep.seconds);
  }
  return rep.all_passed() ? kExitOk : kExitFailure;
}

// ---------------------------------------------------------------- inspect

int cmd_inspect(const std::vector<std::string>& files) {
  for (const auto& path : files) {
    const Snapshot s = read_snapshot(path);
    const SnapshotHeader& h = s.header;
    const ScalarField& f = s.field;
    std::cout << "file: " << path << '\n'
              << "  n: " << h.n << "\n  L: " << fmt(h.box_length) << "\n  kind: " << h.kind
              << "\n  component: " << h.component << "\n  symmetry: " << describe(h.symmetry)
              << "\n  time: " << fmt(h.time) << '\n';
    const bool mz = is_mean_zero(f);
    std::cout << "  l2: " << fmt(l2_norm(f)) << "\n  linf: " << fmt(linf_norm(f))
              << "\n  mean: " << fmt(f.spectrum()[0].real() / static_cast<double>(f.grid().size()))
              << "\n  mean_zero: " << (mz ? "true" : "false") << '\n';
    if (mz) std::cout << "  hminus1: " << fmt(sobolev_norm(f, NormSpec{}, NormKind::HdotNeg1)) << '\n';
    if (h.kind == "w1") {
      const ConstraintResidual cr = constraint_residual(f);
      std::cout << "  constraint_residual_physical: " << fmt(cr.physical)
                << "\n  constraint_residual_fourier: " << fmt(cr.fourier)
                << "\n  lambda_periodic: " << fmt(lambda_spectral(f)) << '\n';
    }
  }
  return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Permutation-symmetric Euler toolkit", "eulerperm"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::optional<int> threads;
  std::string simd_level;
  std::string fault_name;
  app.add_option("--threads", threads, "Cap on worker threads")->check(CLI::PositiveNumber);
  app.add_option("--simd", simd_level, "auto | scalar | avx2 (default: auto, or EULERPERM_SIMD)");
  app.add_option("--inject-fault", fault_name)->group("");

  InitArgs init;
  CLI::App* init_cmd = app.add_subcommand("init", "Write sign-condition initial data");
  init_cmd->add_option("--config", init.config, "JSON configuration; flags override it");
  init.grid.attach(init_cmd);
  init.fam.attach(init_cmd);
  init_cmd->add_option("--out", init.out, "Output directory");
  init_cmd->add_flag("--with-fields", init.with_fields, "Also write velocity and vorticity components");

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Integrate and write diagnostics, snapshots and a manifest");
  run_cmd->add_option("--config", run.config, "JSON configuration; flags override it");
  run.grid.attach(run_cmd);
  run.fam.attach(run_cmd);
  run_cmd->add_option("--dt", run.dt, "Fixed time step (default: auto CFL)");
  run_cmd->add_option("--cfl", run.cfl, "CFL safety factor for the automatic step");
  run_cmd->add_option("--t-end", run.t_end, "Final time");
  run_cmd->add_option("--dealias", run.dealias, "true | false");
  run_cmd->add_option("--diagnostics-every", run.diagnostics_every, "Diagnostics cadence in steps");
  run_cmd->add_option("--snapshot-every", run.snapshot_every, "Snapshot cadence in steps (0: final only)");
  run_cmd->add_option("--reproject-every", run.reproject_every, "Constraint re-projection cadence (0: off)");
  run_cmd->add_option("--mode", run.mode, "single | full | both");
  run_cmd->add_option("--initial-file", run.initial_file, "w1 snapshot used with --family file");
  run_cmd->add_option("--out", run.out, "Output directory");

  bool fast = false, full = false;
  std::string verify_out;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run the identity suites");
  auto* fast_flag = verify_cmd->add_flag("--fast", fast, "Small grids (default)");
  verify_cmd->add_flag("--full", full, "n = 64 grids")->excludes(fast_flag);
  verify_cmd->add_option("--out", verify_out, "Write a manifest with the pass/fail table here");

  std::vector<std::string> files;
  CLI::App* inspect_cmd = app.add_subcommand("inspect", "Print snapshot headers, norms and residuals");
  inspect_cmd->add_option("files", files, "Snapshot files")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (threads) omp_set_num_threads(*threads);
    if (!simd_level.empty()) simd::set_active_level(simd::parse_level(simd_level));
    if (fault_name.empty())
      if (const char* env = std::getenv("EULERPERM_FAULT")) fault_name = env;
    if (fault_name == "reconstruct_sign") {
      fault::inject(fault::Kind::reconstruct_sign);
    } else if (!fault_name.empty() && fault_name != "none") {
      throw InvalidInput("unknown fault: " + fault_name);
    }

    if (*init_cmd) return cmd_init(init);
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(full, verify_out);
    if (*inspect_cmd) return cmd_inspect(files);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalBreakdown& e) {
    std::cerr << "numerical breakdown: " << e.what() << '\n';
    return kExitBreakdown;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace eulerperm
