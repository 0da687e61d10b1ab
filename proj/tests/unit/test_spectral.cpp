#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qqg/legendre.hpp"
#include "qqg/spectral.hpp"

using namespace qqg::sphere;
using std::numbers::pi;

TEST_CASE("normalized Legendre functions match std::assoc_legendre") {
  const int lmax = 30;
  LegendreColumn col;
  for (double mu : {-0.97, -0.4, 0.0, 0.25, 0.8, 0.999}) {
    evaluate_legendre(lmax, mu, std::sqrt(1.0 - mu * mu), col);
    for (int l = 0; l <= lmax; ++l) {
      for (int m = 0; m <= l; ++m) {
        // std::assoc_legendre omits the Condon-Shortley phase as well.
        const double norm = std::sqrt((2 * l + 1) / (4 * pi) * std::tgamma(l - m + 1.0) / std::tgamma(l + m + 1.0));
        const double ref = norm * std::assoc_legendre(l, m, mu);
        CHECK(std::abs(col.q[triangle_index(lmax, l, m)] - ref) < 1e-11 * std::max(1.0, std::abs(ref)));
      }
    }
  }
}

TEST_CASE("Gauss-Legendre rule integrates polynomials exactly") {
  const auto g = gauss_legendre(8);
  double s = 0.0, s14 = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    s += g.weights[i];
    s14 += g.weights[i] * std::pow(g.nodes[i], 14);
  }
  CHECK(s == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s14 == doctest::Approx(2.0 / 15.0).epsilon(1e-14));
}

TEST_CASE("grid sizes") {
  const auto g = SphGrid::minimal(10);
  CHECK(g->nlat() >= 11);
  CHECK(g->nlon() >= 21);
  const auto d = SphGrid::dealiased(42);
  CHECK(d->nlat() >= 64);
  CHECK(d->nlon() >= 127);
  CHECK(SphGrid::dealiased(42) == d);
  CHECK(fft_friendly_size(127) >= 127);
}

TEST_CASE("synthesize and analyze round trip") {
  const auto f = random_band_field(20, 0, 20, 3);
  const auto grid = SphGrid::dealiased(20);
  CHECK(max_abs_diff(analyze(synthesize(f, *grid), *grid), f) < 1e-12);
}

TEST_CASE("Y10 is sqrt(3 / 4 pi) cos theta: bracket example {cos theta, sin theta cos lambda}") {
  const int L = 8;
  const double c1 = std::sqrt(3.0 / (4.0 * pi));
  const SphField mu = cos_theta_field(L);
  CHECK(mu(1, 0) == doctest::Approx(1.0 / c1));
  // x = sin theta cos lambda, y = sin theta sin lambda
  const SphField x = SphField::harmonic(L, 1, 1, 1.0 / c1);
  const SphField y = SphField::harmonic(L, 1, -1, 1.0 / c1);
  CHECK(max_abs_diff(jacobian_bracket(mu, x), y) < 1e-13);
  CHECK(max_abs_diff(jacobian_bracket(x, mu), y * -1.0) < 1e-13);
  for (const auto& p : {unit_vector(0.3, 1.2), unit_vector(-0.8, 4.0)}) {
    CHECK(value_at(x, p) == doctest::Approx(p[0]).epsilon(1e-13));
    CHECK(value_at(y, p) == doctest::Approx(p[1]).epsilon(1e-13));
    CHECK(value_at(mu, p) == doctest::Approx(p[2]).epsilon(1e-13));
  }
}

TEST_CASE("bracket antisymmetry and zonal vanishing") {
  const auto f = random_band_field(16, 1, 16, 5);
  const auto g = random_band_field(16, 1, 16, 6);
  CHECK(max_abs_diff(jacobian_bracket(f, g), jacobian_bracket(g, f) * -1.0) < 1e-12);
  const SphField z1 = SphField::harmonic(16, 3, 0, 1.0) + SphField::harmonic(16, 6, 0, 0.5);
  const SphField z2 = SphField::harmonic(16, 2, 0, 1.0);
  CHECK(jacobian_bracket(z1, z2).max_abs_coeff() < 1e-14);
}

TEST_CASE("Laplacian and Helmholtz inversion") {
  const SphField y = SphField::harmonic(12, 5, 3, 1.0);
  CHECK(max_abs_diff(laplacian(y), y * -30.0) < 1e-14);
  CHECK(max_abs_diff(helmholtz_apply(y, 1.0), y * -31.0) < 1e-14);
  CHECK(max_abs_diff(helmholtz_invert(y * -31.0, 1.0), y) < 1e-14);
  SphField q = SphField::harmonic(12, 0, 0, 1.0);
  CHECK_THROWS_AS(helmholtz_invert(q, 0.0), Unsolvable);
  q(0, 0) = 0.0;
  CHECK(helmholtz_invert(q, 0.0).max_abs_coeff() == 0.0);
}

TEST_CASE("integration and point evaluation") {
  const SphField one = constant_field(10, 1.0);
  CHECK(integrate(one) == doctest::Approx(4.0 * pi));
  CHECK(integrate(SphField::harmonic(10, 3, 2, 1.0)) == doctest::Approx(0.0));
  const auto f = random_band_field(10, 0, 10, 2);
  const auto grid = SphGrid::minimal(10);
  const auto values = synthesize(f, *grid);
  const double mu0 = grid->mu()[2];
  const double lam = grid->lambda(5);
  CHECK(value_at(f, unit_vector(mu0, lam)) == doctest::Approx(values[2 * grid->nlon() + 5]).epsilon(1e-12));
}

TEST_CASE("random band fields: band, rms and determinism") {
  const auto a = random_band_field(20, 3, 10, 99, 0.25);
  const auto b = random_band_field(20, 3, 10, 99, 0.25);
  CHECK(a == b);
  for (int l = 0; l <= 20; ++l) {
    for (int m = -l; m <= l; ++m) {
      if (l < 3 || l > 10) CHECK(a(l, m) == 0.0);
    }
  }
  const auto grid = SphGrid::dealiased(20);
  auto v = synthesize(a, *grid);
  for (double& x : v) x *= x;
  CHECK(std::sqrt(grid->integrate(v) / (4.0 * pi)) == doctest::Approx(0.25).epsilon(1e-10));
  CHECK(!(random_band_field(20, 3, 10, 100, 0.25) == a));
}
