#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qqg/qg_dynamics.hpp"
#include "qqg/spectral.hpp"

using namespace qqg;
using namespace qqg::qg;
using sphere::SphField;

namespace {

QGParams params(int lmax, double alpha2, double beta) {
  QGParams p;
  p.lmax = lmax;
  p.alpha2 = alpha2;
  p.beta = beta;
  return p;
}

}  // namespace

TEST_CASE("parameter validation") {
  QGParams p = params(16, 1.0, 0.0);
  CHECK_NOTHROW(p.validate());
  p.dt = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = params(16, -1.0, 0.0);
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = params(16, 1.0, 0.0);
  p.hyper_nu = -1.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("state consistency and gauge") {
  const QGParams p = params(20, 1.5, 0.7);
  SphField f = sphere::random_band_field(20, 0, 20, 4);
  const QGState s = make_state(f, p);
  CHECK(s.f(0, 0) == 0.0);
  SphField expect = sphere::helmholtz_apply(s.f, p.alpha2) - sphere::cos_theta_field(20) * p.beta;
  CHECK(sphere::max_abs_diff(s.omega, expect) < 1e-12);
  CHECK(sphere::max_abs_diff(stream_function(s.omega, p), s.f) < 1e-12);
  const QGState r = state_from_omega(s.omega, p);
  CHECK(sphere::max_abs_diff(r.f, s.f) < 1e-12);
}

TEST_CASE("stream function with alpha2 = 0 ignores the mean of omega") {
  const QGParams p = params(10, 0.0, 0.0);
  SphField w = SphField::harmonic(10, 2, 1, 1.0);
  w(0, 0) = 3.0;
  const SphField f = stream_function(w, p);
  CHECK(f(0, 0) == 0.0);
  CHECK(f(2, 1) == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("zonal and single-harmonic tendencies vanish") {
  const QGParams pz = params(24, 1.0, 1.0);
  const SphField z = SphField::harmonic(24, 2, 0, 1.0) + SphField::harmonic(24, 5, 0, -0.4);
  CHECK(tendency(make_state(z, pz), pz).max_abs_coeff() < 1e-14);
  const QGParams pf = params(24, 3.0, 0.0);
  CHECK(tendency(make_state(SphField::harmonic(24, 5, 3, 1.0), pf), pf).max_abs_coeff() < 1e-12);
}

TEST_CASE("Rossby wave tendency is beta d f / d lambda") {
  const QGParams p = params(24, 1.0, 1.0);
  const QGState s = make_state(SphField::harmonic(24, 5, 3, 1.0), p);
  SphField expect = sphere::dlambda(s.f);
  CHECK(sphere::max_abs_diff(tendency(s, p), expect) < 1e-13);
}

TEST_CASE("central extension route: beta = a") {
  QGParams pb = params(20, 1.0, 1.3);
  QGParams pa = params(20, 1.0, 0.0);
  pa.central_a = 1.3;
  const auto f = sphere::random_band_field(20, 1, 12, 8, 0.01);
  CHECK(sphere::max_abs_diff(tendency(make_state(f, pb), pb), tendency(make_state(f, pa), pa)) < 1e-14);
}

TEST_CASE("energy of Y10 with alpha2 = 1 is 3; constants carry none") {
  const QGParams p = params(8, 1.0, 0.0);
  CHECK(energy(make_state(SphField::harmonic(8, 1, 0, 1.0), p), p) == doctest::Approx(3.0));
  CHECK(energy(make_state(sphere::constant_field(8, 2.0), p), p) == 0.0);
  CHECK(energy(make_state(SphField(8), p), p) == 0.0);
}

TEST_CASE("Casimirs and vorticity range") {
  const QGParams p = params(16, 1.0, 0.0);
  const QGState s = make_state(SphField::harmonic(16, 1, 0, -0.5), p);
  const auto c = casimirs(s, {1, 2, 3});
  CHECK(std::abs(c[0]) < 1e-14);
  CHECK(c[1] == doctest::Approx(s.omega.l2_norm() * s.omega.l2_norm()));
  CHECK(std::abs(c[2]) < 1e-14);
  const auto [lo, hi] = vorticity_range(s);
  CHECK(lo == doctest::Approx(-hi).epsilon(1e-12));
  CHECK(hi == doctest::Approx(1.5 * std::sqrt(3.0 / (4.0 * std::numbers::pi))).epsilon(1e-10));
}

TEST_CASE("solid-body velocity: f = cos theta has unit speed at the equator") {
  const QGParams p = params(8, 1.0, 0.0);
  const QGState s = make_state(sphere::cos_theta_field(8), p);
  CHECK(max_speed(s) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("step plan covers the duration exactly") {
  const auto [n, dt] = step_plan(1.0, 0.3);
  CHECK(n == 4);
  CHECK(dt == doctest::Approx(0.25));
  CHECK(step_plan(1.0, 1e-3).first == 1000);
  CHECK(step_plan(0.0, 0.1).first == 0);
}

TEST_CASE("run: t_end = init time is a no-op; zonal state is a fixed point") {
  QGParams p = params(16, 1.0, 1.0);
  p.dt = 1e-2;
  const QGState z = make_state(SphField::harmonic(16, 2, 0, 1.0) + SphField::harmonic(16, 4, 0, 0.5), p);
  p.t_end = 0.0;
  const QGState same = run(z, p);
  CHECK(same.omega == z.omega);
  CHECK(same.time == 0.0);
  p.t_end = 10.0;
  const QGState after = run(z, p);
  CHECK(after.time == 10.0);
  CHECK(sphere::max_abs_diff(after.f, z.f) < 1e-10);
}

TEST_CASE("run: observer cadence and final time") {
  QGParams p = params(12, 1.0, 0.0);
  p.dt = 0.01;
  p.t_end = 0.1;
  const QGState s = make_state(sphere::random_band_field(12, 2, 6, 3, 0.01), p);
  RunObserver obs;
  obs.diag_every = 3;
  std::vector<double> times;
  int steps = 0;
  obs.on_diagnostics = [&](const Diagnostics& d) { times.push_back(d.time); };
  obs.on_step = [&](const QGState&) { ++steps; };
  const QGState out = run(s, p, obs);
  CHECK(steps == 11);
  REQUIRE(times.size() == 5);
  CHECK(times.front() == 0.0);
  CHECK(times[1] == doctest::Approx(0.03));
  CHECK(times.back() == 0.1);
  CHECK(out.time == 0.1);
}

TEST_CASE("time reversibility") {
  QGParams p = params(16, 1.0, 0.5);
  p.dt = 0.01;
  p.t_end = 0.5;
  const QGState s0 = make_state(sphere::random_band_field(16, 2, 8, 21, 0.05), p);
  const QGState s1 = run(s0, p);
  QGState back = s1;
  for (int i = 0; i < 50; ++i) back = step_rk4(back, p, -0.01);
  CHECK(sphere::max_abs_diff(back.omega, s0.omega) < 1e-8 * s0.omega.max_abs_coeff());
}

TEST_CASE("non-finite state aborts") {
  QGParams p = params(8, 1.0, 0.0);
  QGState s = make_state(SphField::harmonic(8, 2, 1, 1.0), p);
  s.omega(3, 1) = std::nan("");
  CHECK_THROWS_AS(step_rk4(s, p), NumericalBlowup);
}

TEST_CASE("hyperviscosity damps the highest modes") {
  QGParams p = params(16, 1.0, 0.0);
  p.hyper_nu = 1e-6;
  p.dt = 0.01;
  p.t_end = 0.1;
  const QGState s = make_state(SphField::harmonic(16, 16, 2, 1.0), p);
  const QGState out = run(s, p);
  CHECK(std::abs(out.f(16, 2)) < std::abs(s.f(16, 2)));
}

TEST_CASE("vorticity range bounds a dense scan and is attained") {
  const QGParams p = params(12, 1.0, 0.0);
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const QGState s = make_state(sphere::random_band_field(12, 3, 10, seed), p);
    const auto [lo, hi] = vorticity_range(s);
    double smin = 1e300, smax = -1e300;
    for (int i = 0; i <= 200; ++i) {
      for (int k = 0; k < 400; ++k) {
        const double v = sphere::value_at(s.omega, sphere::unit_vector(-1.0 + i / 100.0, k * std::numbers::pi / 200.0));
        smin = std::min(smin, v);
        smax = std::max(smax, v);
      }
    }
    CHECK(lo <= smin + 1e-12);
    CHECK(hi >= smax - 1e-12);
    // a scan this fine is within the quadratic error of the true extremum
    CHECK(smin - lo < 1e-3 * (smax - smin));
    CHECK(hi - smax < 1e-3 * (smax - smin));
  }
}
