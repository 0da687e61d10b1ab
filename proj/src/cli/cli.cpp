#include "qqg/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "qqg/config.hpp"
#include "qqg/diagnostics_csv.hpp"
#include "qqg/experiments.hpp"
#include "qqg/parallel.hpp"
#include "qqg/report.hpp"
#include "qqg/snapshot.hpp"
#include "qqg/verify.hpp"

namespace qqg::cli {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Loaded {
  io::RunConfig cfg;
  qg::QGState init;
  fs::path out_dir;
};

// Output paths live under --output-dir when given, else under the config's
// output_dir; a snapshot init path is resolved against the config file's directory.
Loaded load(const std::string& config_path, const std::optional<std::string>& out_override) {
  Loaded r;
  r.cfg = io::load_config(config_path);
  if (out_override) r.cfg.output_dir = *out_override;
  r.out_dir = r.cfg.output_dir;
  r.init = io::initial_state(r.cfg, fs::path(config_path).parent_path());
  return r;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return os;
}

fs::path snapshot_path(const fs::path& dir, double time, double dt, double t0) {
  const long step = std::lround((time - t0) / dt);
  char name[48];
  std::snprintf(name, sizeof name, "snapshot_%06ld.bin", step);
  return dir / name;
}

int cmd_solve(const std::string& config, const std::optional<std::string>& out_dir, std::ostream& out) {
  Loaded L = load(config, out_dir);
  ensure_dir(L.out_dir);
  std::ofstream csv = open_csv(L.out_dir / "diagnostics.csv");
  io::DiagnosticsWriter writer(csv, 0);
  const double t0 = L.init.time;
  const double dt = qg::step_plan(L.cfg.params.t_end - t0, L.cfg.params.dt).second;

  qg::RunObserver obs;
  obs.diag_every = L.cfg.diag_every;
  obs.snapshot_every = L.cfg.snapshot_every;
  obs.on_diagnostics = [&](const qg::Diagnostics& d) { writer.write(d); };
  std::size_t snapshots = 0;
  obs.on_snapshot = [&](const qg::QGState& s) {
    io::write_snapshot(s, L.cfg.params, snapshot_path(L.out_dir, s.time, dt > 0 ? dt : 1.0, t0));
    ++snapshots;
  };
  qg::QGState final_state;
  try {
    final_state = qg::run(L.init, L.cfg.params, obs);
  } catch (const qg::NumericalBlowup& e) {
    csv.flush();
    out << "blow-up: " << e.what() << "\n";
    return kExitFail;
  }
  const qg::Diagnostics d0 = qg::diagnostics(L.init, L.cfg.params);
  const qg::Diagnostics d1 = qg::diagnostics(final_state, L.cfg.params);
  out << "t = " << fmt("%.6g", final_state.time) << "  snapshots = " << snapshots << "\n";
  out << "energy " << fmt("%.12e", d0.energy) << " -> " << fmt("%.12e", d1.energy) << "\n";
  out << "enstrophy " << fmt("%.12e", d0.enstrophy) << " -> " << fmt("%.12e", d1.enstrophy) << "\n";
  out << "output: " << (L.out_dir / "diagnostics.csv").string() << "\n";
  return kExitPass;
}

int cmd_verify(const std::string& suite, std::ostream& out) {
  VerifyReport report;
  if (suite == "contact" || suite == "all") report.append(run_contact_suite());
  if (suite == "hopf" || suite == "all") report.append(run_hopf_suite());
  if (suite == "spectral" || suite == "all") report.append(run_spectral_suite());
  print_report(report, out);
  const bool ok = report.all_passed();
  out << (ok ? "all checks passed" : "FAILED") << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_rossby(const std::string& config, std::ostream& out) {
  Loaded L = load(config, std::nullopt);
  const io::InitSpec& init = L.cfg.init;
  if (init.kind != io::InitSpec::Kind::Harmonic || init.m == 0) {
    throw UsageError("rossby needs `init = harmonic l m amplitude` with m != 0");
  }
  const auto r = experiments::measure_rossby(L.init, L.cfg.params, init.l, init.m);
  constexpr double kRelTol = 0.01;
  constexpr double kOracleTol = 1e-10;
  out << "wave (l, m) = (" << r.l << ", " << r.m << ")\n";
  out << "predicted |c| = " << fmt("%.9f", std::abs(r.predicted)) << "\n";
  out << "measured  |c| = " << fmt("%.9f", std::abs(r.measured)) << "\n";
  out << "relative error = " << fmt("%.3e", r.rel_error) << " (tolerance " << fmt("%g", kRelTol) << ")\n";
  out << "direction: " << (r.measured > 0 ? "eastward" : r.measured < 0 ? "westward" : "none") << "\n";
  out << "oracle residual |omega_t - beta f_lambda| = " << fmt("%.3e", r.oracle_residual) << "\n";
  const bool ok = r.rel_error < kRelTol && r.oracle_residual < kOracleTol;
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_lagrangian(const std::string& config, const std::optional<std::string>& out_dir, double pv_tol,
                   std::ostream& out) {
  Loaded L = load(config, out_dir);
  ensure_dir(L.out_dir);
  io::ParticleSpec ps = L.cfg.particles;
  if (ps.count == 0 && ps.pairs == 0) {
    ps.count = 100;
    ps.pairs = 50;
  }
  experiments::ParticleTracker tracker(lagrangian::seeded_ensemble(ps.count, ps.pairs, ps.seed), L.cfg.params,
                                       L.cfg.params.t_end);
  std::ofstream csv = open_csv(L.out_dir / "diagnostics.csv");
  io::DiagnosticsWriter writer(csv, ps.pairs);
  qg::RunObserver obs;
  obs.diag_every = L.cfg.diag_every;
  obs.on_step = [&](const qg::QGState& s) { tracker.observe(s); };
  obs.on_diagnostics = [&](const qg::Diagnostics& d) { writer.write(d, tracker.pair_rho()); };
  try {
    qg::run(L.init, L.cfg.params, obs);
  } catch (const qg::NumericalBlowup& e) {
    csv.flush();
    out << "blow-up: " << e.what() << "\n";
    return kExitFail;
  }
  const double pv = tracker.pv_residual();
  const auto h = tracker.holder_report();
  out << "particles = " << ps.count << "  pairs = " << ps.pairs << "  t = " << fmt("%.6g", tracker.ensemble().time)
      << "\n";
  out << "pv transport residual = " << fmt("%.3e", pv) << " (tolerance " << fmt("%g", pv_tol) << ")\n";
  out << "K = " << fmt("%.6g", h.K) << "  L = " << fmt("%.6g", h.L) << "  exponent = " << fmt("%.6g", h.hoelder_exponent)
      << "\n";
  out << "worst psi ratio = " << fmt("%.6g", h.worst_psi_ratio) << "  worst rho ratio = " << fmt("%.6g", h.worst_rho_ratio)
      << "\n";
  const bool ok = pv < pv_tol && h.passed;
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitPass : kExitFail;
}

int cmd_spectrum(const std::string& path, std::ostream& out) {
  const io::Snapshot snap = io::read_snapshot(path);
  const qg::QGState s = snap.state();
  out << "# time " << fmt("%.17g", snap.time) << "\n";
  out << "l,energy,enstrophy\n";
  for (int l = 0; l <= snap.lmax; ++l) {
    double e = 0.0;
    double z = 0.0;
    for (int m = -l; m <= l; ++m) {
      e += s.f(l, m) * s.f(l, m);
      z += s.omega(l, m) * s.omega(l, m);
    }
    e *= snap.alpha2 + l * (l + 1.0);
    out << l << "," << fmt("%.17g", e) << "," << fmt("%.17g", z) << "\n";
  }
  return kExitPass;
}

}  // namespace

int main_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasigeostrophic solver on the sphere with contact-geometry verification", "qqg"};
  app.require_subcommand(0, 1);
  std::optional<unsigned> threads;
  app.add_option("--threads", threads, "worker threads (0 = auto; overrides QQG_THREADS)");

  std::string config;
  std::optional<std::string> out_dir;
  auto* solve = app.add_subcommand("solve", "integrate a configured run, writing snapshots and diagnostics.csv");
  solve->add_option("--config,-c", config, "run configuration file")->required();
  solve->add_option("--output-dir,-o", out_dir, "directory for output files");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run operator identity suites and print residuals");
  verify->add_option("--suite", suite, "contact, hopf, spectral or all")
      ->check(CLI::IsMember({"contact", "hopf", "spectral", "all"}));

  auto* rossby = app.add_subcommand("rossby", "measure Rossby-Haurwitz phase speed against beta/(l(l+1)+alpha2)");
  rossby->add_option("--config,-c", config, "run configuration with a harmonic init")->required();

  double pv_tol = 1e-3;
  auto* lagr = app.add_subcommand("lagrangian", "advect particles, check vorticity transport and Hoelder bounds");
  lagr->add_option("--config,-c", config, "run configuration file")->required();
  lagr->add_option("--output-dir,-o", out_dir, "directory for output files");
  lagr->add_option("--pv-tol", pv_tol, "tolerance on |omega(t, eta) - omega(0, x)|");

  std::string snap_path;
  auto* spectrum = app.add_subcommand("spectrum", "print energy and enstrophy per degree l of a snapshot");
  spectrum->add_option("snapshot", snap_path, "snapshot file")->required();

  if (args.empty()) {
    out << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  if (app.get_subcommands().empty()) {
    out << app.help();
    return kExitUsage;
  }
  if (threads) set_worker_count(*threads);

  try {
    if (*solve) return cmd_solve(config, out_dir, out);
    if (*verify) return cmd_verify(suite, out);
    if (*rossby) return cmd_rossby(config, out);
    if (*lagr) return cmd_lagrangian(config, out_dir, pv_tol, out);
    if (*spectrum) return cmd_spectrum(snap_path, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const io::ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}

int main_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return main_cli(args, std::cout, std::cerr);
}

}  // namespace qqg::cli
