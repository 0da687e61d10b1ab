#pragma once
// Run configuration: `key = value` lines, `#` starts a comment.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qqg/qg_dynamics.hpp"

namespace qqg::io {

struct ConfigError : std::runtime_error {
  int line;  // 0 when not tied to a line
  ConfigError(const std::string& what, int line_no)
      : std::runtime_error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what),
        line(line_no) {}
};

/// Amplitude used by `random-band` when none is given: root-mean-square
/// stream function. Small enough that the enstrophy cascade stays resolved at
/// lmax 64 over a few time units.
constexpr double kDefaultBandRms = 0.0035;

struct InitSpec {
  enum class Kind { Zonal, Harmonic, RandomBand, Snapshot };
  Kind kind = Kind::Zonal;
  double amplitude = 1.0;
  int l = 0;
  int m = 0;
  int lmin = 0;
  int lmax_band = 0;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string path;
};

struct ParticleSpec {
  std::size_t count = 0;
  std::size_t pairs = 0;
  std::uint64_t seed = 1;
};

struct RunConfig {
  qg::QGParams params;
  InitSpec init;
  int snapshot_every = 0;
  int diag_every = 0;
  std::string output_dir = ".";
  std::uint64_t seed = 0;
  ParticleSpec particles;
};

/// dt used when the file gives none: pi / (4 (lmax + 1)), a quarter of the
/// grid spacing, i.e. CFL 1/4 at unit velocity.
double default_dt(int lmax);

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Initial stream function / state described by cfg.init. Snapshot paths are
/// resolved relative to `base_dir` when not absolute.
qg::QGState initial_state(const RunConfig& cfg, const std::filesystem::path& base_dir = ".");

}  // namespace qqg::io
