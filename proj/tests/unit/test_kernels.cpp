#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "qqg/kernels.hpp"
#include "qqg/spectral.hpp"

using namespace qqg;

namespace {

std::vector<double> randoms(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct PathGuard {
  kernels::Path saved = kernels::active_path();
  ~PathGuard() { kernels::select(saved); }
};

}  // namespace

TEST_CASE("kernel paths: scalar always available, names round-trip") {
  const auto paths = kernels::available_paths();
  REQUIRE(!paths.empty());
  CHECK(paths.front() == kernels::Path::Scalar);
  for (auto p : paths) CHECK(kernels::parse_path(kernels::name(p)) == p);
  CHECK_THROWS_AS(kernels::parse_path("neon"), std::invalid_argument);
  if (kernels::avx2_table() == nullptr || !kernels::cpu_has_avx2()) {
    CHECK_THROWS_AS(kernels::select(kernels::Path::Avx2), std::invalid_argument);
  }
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const kernels::Table* avx = kernels::avx2_table();
  if (avx == nullptr || !kernels::cpu_has_avx2()) {
    MESSAGE("AVX2 variant not available on this machine; equivalence test skipped");
    return;
  }
  const kernels::Table& sc = kernels::scalar_table();
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 127u, 1000u}) {
    CAPTURE(n);
    const auto x = randoms(n, 1), u = randoms(n, 2), v = randoms(n, 3), w = randoms(n, 4);

    auto re1 = randoms(n, 5), im1 = randoms(n, 6);
    auto re2 = re1, im2 = im1;
    sc.axpy2(0.3, -1.7, x.data(), re1.data(), im1.data(), n);
    avx->axpy2(0.3, -1.7, x.data(), re2.data(), im2.data(), n);
    CHECK(max_diff(re1, re2) <= 1e-15);
    CHECK(max_diff(im1, im2) <= 1e-15);

    double d1[2], d2[2];
    sc.dot2(x.data(), u.data(), v.data(), d1, n);
    avx->dot2(x.data(), u.data(), v.data(), d2, n);
    const double tol = 1e-15 * static_cast<double>(n + 1);
    CHECK(std::abs(d1[0] - d2[0]) <= tol);
    CHECK(std::abs(d1[1] - d2[1]) <= tol);

    std::vector<double> c1(n), c2(n);
    sc.cross_diff(x.data(), u.data(), v.data(), w.data(), c1.data(), n);
    avx->cross_diff(x.data(), u.data(), v.data(), w.data(), c2.data(), n);
    CHECK(max_diff(c1, c2) <= 1e-15);

    auto s1 = randoms(n, 7);
    auto s2 = s1;
    sc.scale_by(x.data(), s1.data(), n);
    avx->scale_by(x.data(), s2.data(), n);
    CHECK(max_diff(s1, s2) == 0.0);
  }
}

TEST_CASE("spectral bracket agrees across kernel paths") {
  if (kernels::avx2_table() == nullptr || !kernels::cpu_has_avx2()) return;
  PathGuard guard;
  const auto f = sphere::random_band_field(24, 1, 24, 11);
  const auto g = sphere::random_band_field(24, 1, 24, 12);
  kernels::select(kernels::Path::Scalar);
  const auto a = sphere::jacobian_bracket(f, g);
  const auto ga = sphere::synthesize(f, *sphere::SphGrid::dealiased(24));
  kernels::select(kernels::Path::Avx2);
  const auto b = sphere::jacobian_bracket(f, g);
  const auto gb = sphere::synthesize(f, *sphere::SphGrid::dealiased(24));
  CHECK(sphere::max_abs_diff(a, b) <= 1e-12 * std::max(1.0, a.max_abs_coeff()));
  CHECK(max_diff(ga, gb) <= 1e-12);
}
