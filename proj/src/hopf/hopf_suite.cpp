#include <cmath>
#include <string>

#include "qqg/hopf_s3.hpp"
#include "qqg/spectral.hpp"
#include "qqg/verify.hpp"

namespace qqg {

namespace {

using hopf::Quaternion;

void update(double& worst, double r) {
  if (!(r <= worst)) worst = r;
}

hopf::S3Function lift_field(const sphere::SphField& f) {
  return hopf::lift([f](const hopf::Vec3& p) { return sphere::value_at(f, p); });
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

VerifyReport run_hopf_suite(const HopfSuiteOptions& opt) {
  VerifyReport report;
  const auto pts = hopf::sample_s3(opt.points, opt.seed);

  // Delta_theta on lifted harmonics: eigenvalue alpha^2 + l(l+1).
  const int harmonics[3][2] = {{1, 0}, {2, 1}, {3, 2}};
  for (double a2 : opt.alpha2) {
    const hopf::BergerParams params(std::sqrt(a2));
    for (const auto& lm : harmonics) {
      const int l = lm[0];
      const int m = lm[1];
      const auto field = sphere::SphField::harmonic(l, l, m);
      const auto f = lift_field(field);
      const double lambda = a2 + l * (l + 1.0);
      double worst = 0.0;
      double fmax = 0.0;
      for (const auto& q : pts) {
        const double v = f(q);
        if (std::abs(v) > fmax) fmax = std::abs(v);
        update(worst, std::abs(hopf::berger_contact_laplacian(f, params, q) - lambda * v));
      }
      report.add("hopf", "Y" + std::to_string(l) + std::to_string(m) + " alpha2=" + fmt(a2) + " eigen rel",
                 worst / (lambda * fmax), opt.eigen_threshold);
    }
    double worst = 0.0;
    const hopf::S3Function one = [](const Quaternion&) { return 1.0; };
    for (const auto& q : pts) update(worst, std::abs(hopf::berger_contact_laplacian(one, params, q) - a2));
    report.add("hopf", "Delta_theta 1 - alpha2 (alpha2=" + fmt(a2) + ")", worst, opt.identity_threshold);
  }

  // Frame relations on a function that is not a lift.
  const hopf::S3Function generic = [](const Quaternion& q) {
    return q.w * q.x + std::sin(q.y) * q.z + 0.5 * q.x * q.x * q.y + std::cos(q.z - q.w);
  };
  double worst_frame = 0.0;
  for (const auto& q : pts) {
    for (int i = 1; i <= 3; ++i) {
      const int j = i % 3 + 1;
      const int k = j % 3 + 1;
      const double comm =
          hopf::left_invariant_second(generic, i, j, q) - hopf::left_invariant_second(generic, j, i, q);
      update(worst_frame, std::abs(comm + 2.0 * hopf::left_invariant_derivative(generic, k, q)));
    }
  }
  report.add("hopf", "[E_i, E_j] + 2 E_k", worst_frame, opt.identity_threshold);

  // Fibers are E_1 orbits; pi lands on the unit sphere.
  const auto band = sphere::random_band_field(8, 1, 4, opt.seed ^ 0x1u, 1.0);
  const auto other = sphere::random_band_field(8, 1, 4, opt.seed ^ 0x2u, 1.0);
  const auto fl = lift_field(band);
  const auto gl = lift_field(other);
  double worst_fiber = 0.0;
  double worst_norm = 0.0;
  for (const auto& q : pts) {
    update(worst_fiber, std::abs(hopf::left_invariant_derivative(fl, 1, q)));
    const auto p = hopf::hopf_project(q);
    update(worst_norm, std::abs(std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) - 1.0));
  }
  report.add("hopf", "E_1 (f o pi)", worst_fiber, opt.identity_threshold);
  report.add("hopf", "|pi(q)| - 1", worst_norm, opt.identity_threshold);

  // S_theta f acting on lifts equals -2 {f, g} on S^2 under this frame. The
  // fields carry headroom so the bracket (degree 7) is not truncated.
  const auto bracket = sphere::jacobian_bracket(band, other);
  double worst_s = 0.0;
  double scale = 0.0;
  for (const auto& q : pts) {
    const double lhs = hopf::s_theta_derivation(fl, gl, q);
    const double rhs = -2.0 * sphere::value_at(bracket, hopf::hopf_project(q));
    update(worst_s, std::abs(lhs - rhs));
    update(scale, std::abs(rhs));
  }
  report.add("hopf", "S_theta f (g) + 2 {f,g} o pi rel", worst_s / scale, opt.identity_threshold);
  return report;
}

}  // namespace qqg
