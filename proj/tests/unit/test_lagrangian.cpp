#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qqg/lagrangian.hpp"
#include "qqg/spectral.hpp"

using namespace qqg;
using namespace qqg::lagrangian;
using sphere::SphField;
using std::numbers::pi;

namespace {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double max_dist(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, great_circle_distance(a[i], b[i]));
  return m;
}

}  // namespace

TEST_CASE("velocity of cos theta is unit-rate rotation about the polar axis") {
  // u = p x grad f with grad cos theta = e_z - z p gives (y, -x, 0): d lambda / dt = -1
  const SphField f = sphere::cos_theta_field(6);
  for (const Vec3& p : {sphere::unit_vector(0.0, 0.0), sphere::unit_vector(0.5, 2.0)}) {
    const Vec3 u = velocity_at(f, p);
    CHECK(std::abs(dot(u, p)) < 1e-14);
    CHECK(std::abs(u[0] - p[1]) < 1e-13);
    CHECK(std::abs(u[1] + p[0]) < 1e-13);
    CHECK(std::abs(u[2]) < 1e-13);
  }
}

TEST_CASE("velocity is tangent and vanishes for f = 0") {
  const auto f = sphere::random_band_field(12, 1, 12, 4);
  for (const auto& p : seeded_ensemble(20, 0, 3).positions) CHECK(std::abs(dot(velocity_at(f, p), p)) < 1e-12);
  const Vec3 z = velocity_at(SphField(8), sphere::unit_vector(0.2, 0.3));
  CHECK(z == Vec3{0.0, 0.0, 0.0});
}

TEST_CASE("seeded ensemble: unit positions and log-spaced pairs") {
  const auto e = seeded_ensemble(10, 5, 77);
  REQUIRE(e.positions.size() == 20);
  REQUIRE(e.pairs.size() == 5);
  for (const auto& p : e.positions) CHECK(std::sqrt(dot(p, p)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(great_circle_distance(e.positions[e.pairs[0].first], e.positions[e.pairs[0].second]) ==
        doctest::Approx(1e-4).epsilon(1e-8));
  CHECK(great_circle_distance(e.positions[e.pairs[4].first], e.positions[e.pairs[4].second]) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(great_circle_distance(e.positions[e.pairs[2].first], e.positions[e.pairs[2].second]) ==
        doctest::Approx(1e-2).epsilon(1e-8));
  const auto again = seeded_ensemble(10, 5, 77);
  CHECK(again.positions == e.positions);
}

TEST_CASE("f = 0 advection is the identity") {
  auto e = seeded_ensemble(20, 2, 5);
  const auto start = e.positions;
  advect(e, frozen(SphField(8)), 0.1, 1.0);
  CHECK(max_dist(e.positions, start) < 1e-15);
  CHECK(e.time == doctest::Approx(1.0));
}

TEST_CASE("solid-body rotation returns after one revolution") {
  auto e = seeded_ensemble(30, 0, 11);
  const auto start = e.positions;
  advect(e, frozen(sphere::cos_theta_field(4)), 2.0 * pi / 2000.0, 2.0 * pi);
  CHECK(max_dist(e.positions, start) < 1e-8);
  for (const auto& p : e.positions) CHECK(std::abs(std::sqrt(dot(p, p)) - 1.0) < 1e-12);
}

TEST_CASE("forward then reversed advection returns to the start at fourth order") {
  const auto f = sphere::random_band_field(10, 1, 8, 6, 0.05);
  const StreamSource src = frozen(f);
  auto round_trip = [&](double dt) {
    auto e = seeded_ensemble(20, 0, 12);
    const auto start = e.positions;
    advect(e, src, dt, 1.0);
    CHECK(max_dist(e.positions, start) > 1e-3);
    e.time = 0.0;
    advect(e, reversed(src, 1.0), dt, 1.0);
    return max_dist(e.positions, start);
  };
  const double e1 = round_trip(0.02);
  const double e2 = round_trip(0.01);
  CHECK(e2 < 1e-8);
  CHECK(e1 / e2 > 12.0);
}

TEST_CASE("great-circle distance and parallel transport") {
  const Vec3 a = {1, 0, 0}, b = {0, 1, 0};
  CHECK(great_circle_distance(a, b) == doctest::Approx(pi / 2));
  CHECK(great_circle_distance(a, a) == 0.0);
  CHECK(great_circle_distance(a, Vec3{-1, 0, 0}) == doctest::Approx(pi));
  const Vec3 v = {0, 0, 1};
  const Vec3 t = parallel_transport(v, a, b);
  CHECK(t[2] == doctest::Approx(1.0));
  const Vec3 w = parallel_transport(Vec3{0, 1, 0}, a, b);
  CHECK(w[0] == doctest::Approx(-1.0));
}

TEST_CASE("quasi-Lipschitz constant: zero for f = 0, linear in f") {
  const auto e = seeded_ensemble(0, 10, 9);
  std::vector<std::pair<Vec3, Vec3>> pairs;
  for (const auto& [i, j] : e.pairs) pairs.emplace_back(e.positions[i], e.positions[j]);
  CHECK(quasi_lipschitz_constant(SphField(8), pairs).K == 0.0);
  const auto f = sphere::random_band_field(8, 1, 8, 2);
  const double k1 = quasi_lipschitz_constant(f, pairs).K;
  const double k2 = quasi_lipschitz_constant(f * 2.0, pairs).K;
  CHECK(k1 > 0.0);
  CHECK(k2 == doctest::Approx(2.0 * k1).epsilon(1e-12));
  const double krot = quasi_lipschitz_constant(sphere::cos_theta_field(8), pairs).K;
  // a Killing field is not parallel: |u(y) - P u(x)| ~ rho, so K is finite and below 1
  CHECK(krot > 0.0);
  CHECK(krot < 1.0);
}

TEST_CASE("Hoelder constants") {
  HolderDiag d;
  d.K = 0.5;
  const auto h = d.at_horizon(2.0);
  CHECK(h.hoelder_exponent == doctest::Approx(std::exp(-1.0)));
  CHECK(h.L == doctest::Approx(std::exp(1.0) * std::pow(pi, 1.0 - std::exp(-1.0))));
  CHECK(d.at_horizon(0.0).hoelder_exponent == 1.0);
}

TEST_CASE("Hoelder bound: solid-body rotation keeps separations") {
  auto e = seeded_ensemble(0, 10, 4);
  const StreamSource src = frozen(sphere::cos_theta_field(6));
  std::vector<PairSample> hist;
  auto sample = [&] {
    PairSample s{e.time, {}};
    for (const auto& [i, j] : e.pairs) s.rho.push_back(great_circle_distance(e.positions[i], e.positions[j]));
    hist.push_back(s);
  };
  sample();
  for (int k = 0; k < 20; ++k) {
    advect_step(e, src, 0.05);
    sample();
  }
  HolderDiag d;
  d.K = 0.0;
  const auto rep = holder_bound_check(hist, d);
  CHECK(rep.passed);
  CHECK(rep.worst_psi_ratio == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("Hoelder bound: frozen shear with measured K") {
  const auto f = SphField::harmonic(8, 2, 0, 1.0) + SphField::harmonic(8, 3, 1, 0.3);
  auto e = seeded_ensemble(0, 20, 8);
  const StreamSource src = frozen(f);
  std::vector<PairSample> hist;
  double K = 0.0;
  auto sample = [&] {
    PairSample s{e.time, {}};
    std::vector<std::pair<Vec3, Vec3>> pts;
    for (const auto& [i, j] : e.pairs) {
      s.rho.push_back(great_circle_distance(e.positions[i], e.positions[j]));
      pts.emplace_back(e.positions[i], e.positions[j]);
    }
    K = std::max(K, quasi_lipschitz_constant(f, pts).K);
    hist.push_back(s);
  };
  sample();
  for (int k = 0; k < 50; ++k) {
    advect_step(e, src, 0.02);
    sample();
  }
  HolderDiag d;
  d.K = K;
  CHECK(holder_bound_check(hist, d).passed);
}

TEST_CASE("PV transport residual on a frozen solid-body field") {
  auto e = seeded_ensemble(40, 0, 13);
  const auto x0 = e.positions;
  advect(e, frozen(sphere::cos_theta_field(6)), 0.01, 1.3);
  // omega = Y10 pattern is invariant under rotation about the axis
  const SphField w = SphField::harmonic(6, 1, 0, 1.0) + SphField::harmonic(6, 4, 0, 0.2);
  CHECK(pv_transport_residual(w, w, x0, e.positions) < 1e-6);
  const SphField w2 = SphField::harmonic(6, 2, 1, 1.0);
  CHECK(pv_transport_residual(w2, w2, x0, e.positions) > 1e-2);
}

TEST_CASE("stream history: Hermite interpolation between samples") {
  StreamHistory h(3);
  const SphField a = SphField::harmonic(4, 2, 0, 1.0);
  // f(t) = a (1 + t + t^2 + t^3) is reproduced exactly
  auto f = [&](double t) { return a * (1 + t + t * t + t * t * t); };
  auto ft = [&](double t) { return a * (1 + 2 * t + 3 * t * t); };
  h.push(0.0, f(0.0), ft(0.0));
  h.push(0.5, f(0.5), ft(0.5));
  h.push(1.0, f(1.0), ft(1.0));
  CHECK(sphere::max_abs_diff(h.at(0.3), f(0.3)) < 1e-14);
  CHECK(sphere::max_abs_diff(h.at(0.75), f(0.75)) < 1e-14);
  CHECK(sphere::max_abs_diff(h.source()(1.0), f(1.0)) == 0.0);
  CHECK_THROWS(h.at(1.5));
}
