#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qqg/config.hpp"
#include "qqg/diagnostics_csv.hpp"
#include "qqg/snapshot.hpp"
#include "qqg/spectral.hpp"

using namespace qqg;
using namespace qqg::io;
namespace fs = std::filesystem;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.line;
  }
  return -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qqg_unit_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("config: Rossby fixture parses to a Y53 harmonic") {
  const RunConfig c = load_config(fs::path(QQG_FIXTURE_DIR) / "rossby.cfg");
  CHECK(c.params.lmax == 42);
  CHECK(c.params.alpha2 == 1.0);
  CHECK(c.params.beta == 1.0);
  CHECK(c.params.dt == 1e-3);
  CHECK(c.params.t_end == 10.0);
  CHECK(c.init.kind == InitSpec::Kind::Harmonic);
  CHECK(c.init.l == 5);
  CHECK(c.init.m == 3);
  CHECK(c.init.amplitude == 1.0);
  const qg::QGState s = initial_state(c);
  CHECK(s.f(5, 3) == 1.0);
  CHECK(s.f.l2_norm() == doctest::Approx(1.0));
}

TEST_CASE("config: defaults, comments and dt heuristic") {
  const RunConfig c = parse_config("# comment only\n\nlmax = 31   # trailing\ninit = zonal 0.5\n");
  CHECK(c.params.lmax == 31);
  CHECK(c.params.dt == doctest::Approx(std::numbers::pi / 128.0));
  CHECK(c.params.t_end == 0.0);
  CHECK(c.init.kind == InitSpec::Kind::Zonal);
  CHECK(c.init.amplitude == 0.5);
  CHECK(default_dt(63) == doctest::Approx(std::numbers::pi / 256.0));
}

TEST_CASE("config: random band init and seed fallback") {
  const RunConfig a = parse_config("lmax = 20\ninit = random-band 3 10\nseed = 7\n");
  const RunConfig b = parse_config("lmax = 20\ninit = random-band 3 10 7\n");
  CHECK(!a.init.seed_given);
  CHECK(initial_state(a).f == initial_state(b).f);
  CHECK(a.init.amplitude == kDefaultBandRms);
  const RunConfig c = parse_config("lmax = 20\ninit = random-band 3 10 7 0.25\n");
  CHECK(c.init.amplitude == 0.25);
}

TEST_CASE("config: errors carry line numbers") {
  CHECK(error_line("lmax = 10\nbogus = 3\n") == 2);
  CHECK(error_line("lmax = 10\n\nalpha2 = abc\n") == 3);
  CHECK(error_line("lmax = 10\nlmax = 12\n") == 2);
  CHECK(error_line("lmax = 10\ndt = -1\n") == 2);
  CHECK(error_line("# x\nlmax = 0\n") == 2);
  CHECK(error_line("lmax = 8\ninit = harmonic 9 1 1.0\n") == 2);
  CHECK(error_line("lmax = 8\ninit = harmonic 3 5 1.0\n") == 2);
  CHECK(error_line("lmax = 8\ninit = spiral\n") == 2);
  CHECK(error_line("lmax = 8\njust words\n") == 2);
  CHECK(error_line("lmax = 8\nalpha2 =\n") == 2);
  CHECK(error_line("lmax = 12abc\n") == 1);
  CHECK_THROWS_AS(load_config("/nonexistent/qqg.cfg"), ConfigError);
}

TEST_CASE("snapshot: encode/decode is bit exact") {
  qg::QGParams p;
  p.lmax = 12;
  p.alpha2 = 0.75;
  p.beta = 0.3;
  p.central_a = 0.1;
  const qg::QGState s = qg::make_state(sphere::random_band_field(12, 1, 12, 5), p, 0.1 + 0.2);
  const Snapshot snap = snapshot_of(s, p);
  const std::string bytes = encode_snapshot(snap);
  const Snapshot back = decode_snapshot(bytes);
  CHECK(back.lmax == 12);
  CHECK(back.alpha2 == 0.75);
  CHECK(back.beta == 0.3);
  CHECK(back.central_a == 0.1);
  CHECK(back.time == s.time);
  CHECK(back.omega == s.omega);
  CHECK(encode_snapshot(back) == bytes);
  CHECK(sphere::max_abs_diff(back.state().f, s.f) < 1e-14);

  const auto nl = bytes.find('\n');
  REQUIRE(nl != std::string::npos);
  CHECK(bytes.size() == nl + 1 + 8 * 169);
  CHECK(bytes.substr(0, 19) == "{\"format_version\":1");
  double first = 0.0;
  std::memcpy(&first, bytes.data() + nl + 1, 8);
  CHECK(first == s.omega(0, 0));

  const fs::path dir = scratch("snapshot");
  write_snapshot(s, p, dir / "s.bin");
  const Snapshot r = read_snapshot(dir / "s.bin");
  CHECK(r.omega == s.omega);
  fs::remove_all(dir);
}

TEST_CASE("snapshot: malformed files fail loudly") {
  qg::QGParams p;
  p.lmax = 4;
  const std::string good = encode_snapshot(snapshot_of(qg::make_state(sphere::SphField::harmonic(4, 2, 1, 1.0), p), p));
  std::string v999 = good;
  v999.replace(v999.find("\"format_version\":1"), 18, "\"format_version\":999");
  CHECK_THROWS_WITH_AS(decode_snapshot(v999), doctest::Contains("999"), SnapshotError);
  CHECK_THROWS_AS(decode_snapshot(good.substr(0, good.size() - 3)), SnapshotError);
  CHECK_THROWS_AS(decode_snapshot(good + "xx"), SnapshotError);
  CHECK_THROWS_AS(decode_snapshot("not json\n"), SnapshotError);
  CHECK_THROWS_AS(decode_snapshot(""), SnapshotError);
  std::string layout = good;
  layout.replace(layout.find("real-sh-l-major"), 15, "complex-m-major");
  CHECK_THROWS_AS(decode_snapshot(layout), SnapshotError);
  CHECK_THROWS_AS(read_snapshot("/nonexistent/snap.bin"), SnapshotError);
}

TEST_CASE("diagnostics CSV schema") {
  CHECK(diagnostics_header(0) == "time,energy,enstrophy,casimir3,casimir4,omega_min,omega_max");
  CHECK(diagnostics_header(2) == "time,energy,enstrophy,casimir3,casimir4,omega_min,omega_max,pair0_rho,pair1_rho");
  qg::Diagnostics d;
  d.time = 0.1;
  d.energy = 1.0 / 3.0;
  const std::string row = diagnostics_row(d, {0.5});
  CHECK(row.rfind("0.10000000000000001,0.33333333333333331,", 0) == 0);
  CHECK(row.substr(row.size() - 3) == "0.5");
  std::ostringstream os;
  DiagnosticsWriter w(os, 1);
  w.write(d, {0.25});
  std::istringstream in(os.str());
  std::string h, r;
  std::getline(in, h);
  std::getline(in, r);
  CHECK(h == diagnostics_header(1));
  CHECK(std::stod(r.substr(r.rfind(',') + 1)) == 0.25);
  CHECK_THROWS(w.write(d, {}));
}
