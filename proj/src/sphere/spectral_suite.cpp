#include <cmath>
#include <numbers>
#include <string>

#include "qqg/spectral.hpp"
#include "qqg/verify.hpp"

namespace qqg {

namespace {

using sphere::SphField;

void update(double& worst, double r) {
  if (!(r <= worst)) worst = r;
}

double dot(const SphField& a, const SphField& b) {
  double s = 0.0;
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) s += ca[i] * cb[i];
  return s;
}

}  // namespace

VerifyReport run_spectral_suite(const SpectralSuiteOptions& opt) {
  VerifyReport report;
  const int L = opt.lmax;
  const auto grid = sphere::SphGrid::dealiased(L);
  const auto minimal = sphere::SphGrid::minimal(L);

  double wsum = 0.0;
  for (double w : minimal->weights()) wsum += w;
  report.add("spectral", "Gauss weights sum - 2", std::abs(wsum - 2.0), 1e-12);

  double r_round = 0.0;
  double r_parseval = 0.0;
  double r_anti = 0.0;
  double r_self = 0.0;
  double r_triple = 0.0;
  double r_mean = 0.0;
  double r_helm = 0.0;
  double r_helm0 = 0.0;
  for (int t = 0; t < opt.trials; ++t) {
    const std::uint64_t s = opt.seed + 3 * static_cast<std::uint64_t>(t);
    const SphField f = sphere::random_band_field(L, 0, L, s, 1.0);
    const SphField g = sphere::random_band_field(L, 0, L, s + 1, 1.0);
    const SphField h = sphere::random_band_field(L, 0, L, s + 2, 1.0);

    for (const auto* gr : {minimal.get(), grid.get()}) {
      const auto v = sphere::synthesize(f, *gr);
      update(r_round, sphere::max_abs_diff(sphere::analyze(v, *gr, L), f));
      std::vector<double> sq(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) sq[i] = v[i] * v[i];
      const double n2 = f.l2_norm();
      update(r_parseval, std::abs(std::sqrt(gr->integrate(sq)) - n2) / n2);
    }

    const SphField fg = sphere::jacobian_bracket(f, g);
    const SphField gf = sphere::jacobian_bracket(g, f);
    update(r_anti, (fg + gf).max_abs_coeff());
    update(r_self, sphere::jacobian_bracket(f, f).max_abs_coeff());
    // int {f,g} h = int {h,f} g, both sides as coefficient dot products
    const SphField hf = sphere::jacobian_bracket(h, f);
    const double lhs = dot(fg, h);
    const double rhs = dot(hf, g);
    update(r_triple, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    update(r_mean, std::abs(sphere::integrate(fg)));

    const SphField back = sphere::helmholtz_apply(sphere::helmholtz_invert(f, 1.0), 1.0);
    update(r_helm, sphere::max_abs_diff(back, f));
    SphField f0 = f;
    f0(0, 0) = 0.0;
    update(r_helm0, sphere::max_abs_diff(sphere::helmholtz_apply(sphere::helmholtz_invert(f0, 0.0), 0.0), f0));
  }
  report.add("spectral", "analyze(synthesize f) - f", r_round, 1e-10);
  report.add("spectral", "Parseval rel", r_parseval, 1e-10);
  report.add("spectral", "{f,g} + {g,f}", r_anti, 1e-12);
  report.add("spectral", "{f,f}", r_self, 1e-12);
  report.add("spectral", "int {f,g} h - int {h,f} g rel", r_triple, 1e-9);
  report.add("spectral", "int {f,g}", r_mean, 1e-10);
  report.add("spectral", "(Delta - 1) invert(q, 1) - q", r_helm, 1e-12);
  report.add("spectral", "Delta invert(q, 0) - q", r_helm0, 1e-12);

  // zonal fields commute; {cos theta, sin theta cos lambda} = sin theta sin lambda
  const SphField z1 = SphField::harmonic(L, 2, 0) + 0.5 * SphField::harmonic(L, 5, 0);
  const SphField z2 = SphField::harmonic(L, 3, 0) - 2.0 * SphField::harmonic(L, 4, 0);
  report.add("spectral", "{zonal, zonal}", sphere::jacobian_bracket(z1, z2).max_abs_coeff(), 1e-12);
  const double c1 = std::sqrt(4.0 * std::numbers::pi / 3.0);
  const SphField x = SphField::harmonic(L, 1, 1, c1);
  const SphField y = SphField::harmonic(L, 1, -1, c1);
  report.add("spectral", "{cos theta, x} - y",
             sphere::max_abs_diff(sphere::jacobian_bracket(sphere::cos_theta_field(L), x), y), 1e-12);
  return report;
}

}  // namespace qqg
