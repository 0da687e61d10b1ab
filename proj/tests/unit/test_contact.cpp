#include <doctest.h>

#include <cmath>

#include "qqg/contact_ops.hpp"

using namespace qqg;
using namespace qqg::contact;

namespace {

template <class T>
T sq(T a) {
  return a * a;
}

}  // namespace

TEST_CASE("S_theta of f = x is d/dy (n = 1)") {
  const auto f = DarbouxScalar::analytic(1, [](auto p) { return p[0]; });
  const auto u = s_theta(f);
  for (const auto& p : sample_box(1, 20, 3)) {
    const auto v = u(p);
    CHECK(v[0] == doctest::Approx(0.0));
    CHECK(v[1] == doctest::Approx(1.0));
    CHECK(v[2] == doctest::Approx(0.0));
  }
}

TEST_CASE("S_theta of a constant is the Reeb field") {
  const auto f = DarbouxScalar::analytic(1, [](auto) { return 1.0; });
  const auto u = s_theta(f);
  const auto v = u(Point{0.3, -0.2, 0.9});
  CHECK(v[0] == doctest::Approx(0.0));
  CHECK(v[1] == doctest::Approx(0.0));
  CHECK(v[2] == doctest::Approx(1.0));
}

TEST_CASE("contact Laplacian of x^2 is -4x^2 - 2 (n = 1)") {
  const auto f = DarbouxScalar::analytic(1, [](auto p) { return p[0] * p[0]; });
  const auto lap = contact_laplacian_darboux(f);
  for (const auto& p : sample_box(1, 20, 5)) {
    CHECK(lap(p) == doctest::Approx(-4.0 * p[0] * p[0] - 2.0).epsilon(1e-12));
  }
  const auto fd = contact_laplacian_darboux(f.without_partials());
  for (const auto& p : sample_box(1, 20, 6)) {
    CHECK(std::abs(fd(p) - (-4.0 * p[0] * p[0] - 2.0)) < 1e-6);
  }
}

TEST_CASE("bracket of coordinates: {x, y} = 1") {
  const auto x = DarbouxScalar::analytic(1, [](auto p) { return p[0]; });
  const auto y = DarbouxScalar::analytic(1, [](auto p) { return p[1]; });
  CHECK(contact_bracket(x, y)(Point{0.1, 0.2, 0.3}) == doctest::Approx(1.0));
  CHECK(contact_bracket(y, x)(Point{0.1, 0.2, 0.3}) == doctest::Approx(-1.0));
}

TEST_CASE("functions depending on z are rejected") {
  const auto f = DarbouxScalar::analytic(1, [](auto p) { return p[2] * p[0]; });
  CHECK_THROWS_AS(s_theta(f), NotReebInvariant);
  const auto g = DarbouxScalar::analytic(1, [](auto p) { return p[0]; });
  CHECK_THROWS_AS(contact_bracket(f, g), NotReebInvariant);
}

TEST_CASE("arity mismatch between operands is an error") {
  const auto f = DarbouxScalar::analytic(1, [](auto p) { return p[0]; });
  const auto g = DarbouxScalar::analytic(2, [](auto p) { return p[1]; });
  CHECK_THROWS_AS(contact_bracket(f, g), ArityMismatch);
}

TEST_CASE("theta(S f) = f and div S f = 0 for n = 2") {
  const auto f = DarbouxScalar::analytic(2, [](auto p) { return sin(p[0]) * p[3] + sq(p[1]) * p[2]; });
  const auto u = s_theta(f);
  const auto th = theta_of(u);
  for (const auto& p : sample_box(2, 30, 9)) {
    CHECK(th(p) == doctest::Approx(f(p)).epsilon(1e-12));
    CHECK(std::abs(divergence(u, p)) < 1e-12);
  }
}

TEST_CASE("adjoint formula composed with S_theta equals the contact Laplacian") {
  const auto f = DarbouxScalar::analytic(2, [](auto p) { return cos(p[0] - p[2]) + p[1] * p[3] * p[0]; });
  const auto lhs = s_theta_adjoint(s_theta(f));
  const auto rhs = contact_laplacian_darboux(f);
  for (const auto& p : sample_box(2, 30, 10)) CHECK(std::abs(lhs(p) - rhs(p)) < 1e-10);
}

TEST_CASE("sample_box is reproducible and inside the box") {
  const auto a = sample_box(1, 50, 42);
  const auto b = sample_box(1, 50, 42);
  CHECK(a == b);
  for (const auto& p : a) {
    REQUIRE(p.size() == 3);
    for (double c : p) CHECK(std::abs(c) <= 1.0);
  }
}
