#include "qqg/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

#include "qqg/snapshot.hpp"
#include "qqg/spectral.hpp"

namespace qqg::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream is{std::string(s)};
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

template <class T>
T parse_number(std::string_view v, int line, std::string_view key) {
  T out{};
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError("cannot parse '" + std::string(v) + "' as a number for " + std::string(key), line);
  }
  return out;
}

double parse_real(std::string_view v, int line, std::string_view key) {
  const double d = parse_number<double>(v, line, key);
  if (!std::isfinite(d)) throw ConfigError(std::string(key) + " must be finite", line);
  return d;
}

InitSpec parse_init(std::string_view value, int line) {
  const auto w = words(value);
  if (w.empty()) throw ConfigError("init needs a value", line);
  InitSpec s;
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (w.size() - 1 < lo || w.size() - 1 > hi) {
      throw ConfigError("init " + w[0] + " takes " + std::to_string(lo) +
                            (lo == hi ? "" : "-" + std::to_string(hi)) + " arguments",
                        line);
    }
  };
  if (w[0] == "zonal") {
    arity(0, 1);
    s.kind = InitSpec::Kind::Zonal;
    if (w.size() > 1) s.amplitude = parse_real(w[1], line, "init zonal amplitude");
  } else if (w[0] == "harmonic") {
    arity(3, 3);
    s.kind = InitSpec::Kind::Harmonic;
    s.l = parse_number<int>(w[1], line, "init harmonic l");
    s.m = parse_number<int>(w[2], line, "init harmonic m");
    s.amplitude = parse_real(w[3], line, "init harmonic amplitude");
    if (s.l < 0 || s.m < -s.l || s.m > s.l) throw ConfigError("init harmonic needs |m| <= l", line);
  } else if (w[0] == "random-band") {
    arity(2, 4);
    s.kind = InitSpec::Kind::RandomBand;
    s.lmin = parse_number<int>(w[1], line, "init random-band lmin");
    s.lmax_band = parse_number<int>(w[2], line, "init random-band lmax");
    if (s.lmin < 0 || s.lmax_band < s.lmin) throw ConfigError("init random-band needs 0 <= lmin <= lmax", line);
    if (w.size() > 3) {
      s.seed = parse_number<std::uint64_t>(w[3], line, "init random-band seed");
      s.seed_given = true;
    }
    s.amplitude = w.size() > 4 ? parse_real(w[4], line, "init random-band amplitude") : kDefaultBandRms;
  } else if (w[0] == "snapshot") {
    arity(1, 1);
    s.kind = InitSpec::Kind::Snapshot;
    s.path = w[1];
  } else {
    throw ConfigError("unknown init '" + w[0] + "' (expected zonal, harmonic, random-band or snapshot)", line);
  }
  return s;
}

}  // namespace

double default_dt(int lmax) { return std::numbers::pi / (4.0 * (lmax + 1)); }

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  auto& p = cfg.params;
  bool dt_given = false;
  std::map<std::string, int> seen;

  using Setter = std::function<void(std::string_view, int)>;
  const std::map<std::string, Setter, std::less<>> setters = {
      {"lmax", [&](std::string_view v, int ln) { p.lmax = parse_number<int>(v, ln, "lmax"); }},
      {"alpha2", [&](std::string_view v, int ln) { p.alpha2 = parse_real(v, ln, "alpha2"); }},
      {"beta", [&](std::string_view v, int ln) { p.beta = parse_real(v, ln, "beta"); }},
      {"central_a", [&](std::string_view v, int ln) { p.central_a = parse_real(v, ln, "central_a"); }},
      {"dt", [&](std::string_view v, int ln) { p.dt = parse_real(v, ln, "dt"); dt_given = true; }},
      {"t_end", [&](std::string_view v, int ln) { p.t_end = parse_real(v, ln, "t_end"); }},
      {"init", [&](std::string_view v, int ln) { cfg.init = parse_init(v, ln); }},
      {"snapshot_every", [&](std::string_view v, int ln) { cfg.snapshot_every = parse_number<int>(v, ln, "snapshot_every"); }},
      {"diag_every", [&](std::string_view v, int ln) { cfg.diag_every = parse_number<int>(v, ln, "diag_every"); }},
      {"output_dir", [&](std::string_view v, int) { cfg.output_dir = std::string(v); }},
      {"seed", [&](std::string_view v, int ln) { cfg.seed = parse_number<std::uint64_t>(v, ln, "seed"); }},
      {"hyper_nu", [&](std::string_view v, int ln) { p.hyper_nu = parse_real(v, ln, "hyper_nu"); }},
      {"hyper_order", [&](std::string_view v, int ln) { p.hyper_order = parse_number<int>(v, ln, "hyper_order"); }},
      {"particle_count", [&](std::string_view v, int ln) { cfg.particles.count = parse_number<std::size_t>(v, ln, "particle_count"); }},
      {"pair_count", [&](std::string_view v, int ln) { cfg.particles.pairs = parse_number<std::size_t>(v, ln, "pair_count"); }},
      {"particle_seed", [&](std::string_view v, int ln) { cfg.particles.seed = parse_number<std::uint64_t>(v, ln, "particle_seed"); }},
  };

  // the line each key was set on, for invariant errors after parsing
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line_no);
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + std::string(key) + "'", line_no);
    if (value.empty()) throw ConfigError("key '" + std::string(key) + "' has no value", line_no);
    if (auto prev = seen.find(std::string(key)); prev != seen.end()) {
      throw ConfigError("key '" + std::string(key) + "' repeats line " + std::to_string(prev->second), line_no);
    }
    seen.emplace(std::string(key), line_no);
    it->second(value, line_no);
  }

  auto line_of = [&](const char* key) {
    auto it = seen.find(key);
    return it == seen.end() ? 0 : it->second;
  };
  if (!dt_given && p.lmax >= 0) p.dt = default_dt(p.lmax);
  if (p.lmax < 1) throw ConfigError("lmax must be >= 1", line_of("lmax"));
  if (p.alpha2 < 0.0) throw ConfigError("alpha2 must be >= 0", line_of("alpha2"));
  if (!(p.dt > 0.0)) throw ConfigError("dt must be > 0", line_of("dt"));
  if (p.t_end < 0.0) throw ConfigError("t_end must be >= 0", line_of("t_end"));
  if (p.hyper_nu < 0.0) throw ConfigError("hyper_nu must be >= 0", line_of("hyper_nu"));
  if (p.hyper_order < 1) throw ConfigError("hyper_order must be >= 1", line_of("hyper_order"));
  if (cfg.snapshot_every < 0) throw ConfigError("snapshot_every must be >= 0", line_of("snapshot_every"));
  if (cfg.diag_every < 0) throw ConfigError("diag_every must be >= 0", line_of("diag_every"));
  const auto& in = cfg.init;
  if (in.kind == InitSpec::Kind::Harmonic && in.l > p.lmax) {
    throw ConfigError("init harmonic l exceeds lmax", line_of("init"));
  }
  if (in.kind == InitSpec::Kind::RandomBand && in.lmax_band > p.lmax) {
    throw ConfigError("init random-band lmax exceeds lmax", line_of("init"));
  }
  if (in.kind == InitSpec::Kind::Zonal && p.lmax < 4) throw ConfigError("init zonal needs lmax >= 4", line_of("init"));
  p.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string(), 0);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

qg::QGState initial_state(const RunConfig& cfg, const std::filesystem::path& base_dir) {
  const auto& p = cfg.params;
  const auto& in = cfg.init;
  using sphere::SphField;
  switch (in.kind) {
    case InitSpec::Kind::Zonal: {
      SphField f = SphField::harmonic(p.lmax, 2, 0, in.amplitude);
      f(4, 0) = 0.5 * in.amplitude;
      return qg::make_state(std::move(f), p);
    }
    case InitSpec::Kind::Harmonic:
      return qg::make_state(SphField::harmonic(p.lmax, in.l, in.m, in.amplitude), p);
    case InitSpec::Kind::RandomBand: {
      const std::uint64_t seed = in.seed_given ? in.seed : cfg.seed;
      return qg::make_state(sphere::random_band_field(p.lmax, in.lmin, in.lmax_band, seed, in.amplitude), p);
    }
    case InitSpec::Kind::Snapshot: {
      std::filesystem::path path = in.path;
      if (path.is_relative()) path = base_dir / path;
      const Snapshot snap = read_snapshot(path);
      qg::QGState s = qg::state_from_omega(snap.omega.resized(p.lmax), p, snap.time);
      return s;
    }
  }
  throw std::logic_error("initial_state: unhandled init kind");
}

}  // namespace qqg::io
