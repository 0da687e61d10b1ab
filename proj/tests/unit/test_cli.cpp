#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "qqg/cli.hpp"
#include "qqg/snapshot.hpp"

using namespace qqg;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qqg_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  os << text;
}

std::size_t count_lines(const fs::path& p) {
  std::ifstream in(p);
  std::size_t n = 0;
  for (std::string line; std::getline(in, line);) ++n;
  return n;
}

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
  const Result none = run({});
  CHECK(none.code == cli::kExitUsage);
  CHECK(none.out.find("Usage") != std::string::npos);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"verify", "--suite", "bogus"}).code == cli::kExitUsage);
  CHECK(run({"solve"}).code == cli::kExitUsage);
  CHECK(run({"spectrum"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitPass);
}

TEST_CASE("cli: verify --suite contact passes") {
  const Result r = run({"verify", "--suite", "contact"});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("FAIL ") == std::string::npos);
  CHECK(r.out.find("all checks passed") != std::string::npos);
}

TEST_CASE("cli: verify --suite spectral passes") { CHECK(run({"verify", "--suite", "spectral"}).code == cli::kExitPass); }

TEST_CASE("cli: bad config is a usage error with the line number") {
  const fs::path dir = scratch("badcfg");
  write(dir / "bad.cfg", "lmax = 10\nunknown_key = 1\n");
  const Result r = run({"solve", "--config", (dir / "bad.cfg").string(), "-o", (dir / "out").string()});
  CHECK(r.code == cli::kExitUsage);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run({"solve", "--config", (dir / "missing.cfg").string()}).code == cli::kExitUsage);
  fs::remove_all(dir);
}

TEST_CASE("cli: solve writes diagnostics and snapshots; spectrum reads them") {
  const fs::path dir = scratch("solve");
  write(dir / "run.cfg",
        "lmax = 16\nalpha2 = 1\nbeta = 0\ndt = 0.01\nt_end = 0.1\ninit = random-band 2 8 5 0.01\n"
        "diag_every = 5\nsnapshot_every = 5\n");
  const Result r = run({"solve", "--config", (dir / "run.cfg").string(), "--output-dir", (dir / "out").string()});
  REQUIRE(r.code == cli::kExitPass);
  CHECK(count_lines(dir / "out" / "diagnostics.csv") == 4);
  CHECK(fs::exists(dir / "out" / "snapshot_000000.bin"));
  CHECK(fs::exists(dir / "out" / "snapshot_000005.bin"));
  CHECK(fs::exists(dir / "out" / "snapshot_000010.bin"));
  CHECK(io::read_snapshot(dir / "out" / "snapshot_000010.bin").time == 0.1);

  const Result s = run({"spectrum", (dir / "out" / "snapshot_000010.bin").string()});
  CHECK(s.code == cli::kExitPass);
  CHECK(s.out.find("l,energy,enstrophy") != std::string::npos);
  CHECK(s.out.find("\n16,") != std::string::npos);

  CHECK(run({"spectrum", (dir / "nope.bin").string()}).code == cli::kExitFail);
  fs::remove_all(dir);
}

TEST_CASE("cli: snapshot init resolved next to the config") {
  const fs::path dir = scratch("restart");
  write(dir / "a.cfg", "lmax = 12\ndt = 0.01\nt_end = 0.05\ninit = random-band 2 6 3 0.01\nsnapshot_every = 5\n");
  REQUIRE(run({"solve", "-c", (dir / "a.cfg").string(), "-o", (dir / "a").string()}).code == cli::kExitPass);
  write(dir / "b.cfg", "lmax = 12\ndt = 0.01\nt_end = 0.1\ninit = snapshot a/snapshot_000005.bin\nsnapshot_every = 5\n");
  REQUIRE(run({"solve", "-c", (dir / "b.cfg").string(), "-o", (dir / "b").string()}).code == cli::kExitPass);
  CHECK(io::read_snapshot(dir / "b" / "snapshot_000005.bin").time == doctest::Approx(0.1));
  fs::remove_all(dir);
}

TEST_CASE("cli: rossby on a non-harmonic config is a usage error") {
  const fs::path dir = scratch("rossby");
  write(dir / "z.cfg", "lmax = 8\ninit = zonal\n");
  CHECK(run({"rossby", "--config", (dir / "z.cfg").string()}).code == cli::kExitUsage);
  write(dir / "h.cfg", "lmax = 12\nbeta = 1\ndt = 0.01\nt_end = 0.5\ninit = harmonic 3 2 1.0\n");
  const Result r = run({"rossby", "--config", (dir / "h.cfg").string()});
  CHECK(r.code == cli::kExitPass);
  CHECK(r.out.find("predicted |c| = 0.076923077") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("cli: lagrangian appends pair columns") {
  const fs::path dir = scratch("lagr");
  write(dir / "l.cfg",
        "lmax = 12\ndt = 0.01\nt_end = 0.1\ninit = random-band 2 6 3 0.01\nparticle_count = 10\npair_count = 3\n"
        "diag_every = 5\n");
  const Result r = run({"lagrangian", "--config", (dir / "l.cfg").string(), "-o", (dir / "out").string()});
  CHECK(r.code == cli::kExitPass);
  std::ifstream in(dir / "out" / "diagnostics.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.find("pair2_rho") != std::string::npos);
  CHECK(header.find("pair3_rho") == std::string::npos);
  fs::remove_all(dir);
}
