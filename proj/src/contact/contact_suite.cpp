#include <algorithm>
#include <cmath>
#include <string>

#include "qqg/contact_ops.hpp"
#include "qqg/legendre.hpp"
#include "qqg/verify.hpp"

namespace qqg {

namespace {

using contact::DarbouxScalar;
using contact::DarbouxVector;
using contact::Point;

struct Panel {
  int n;
  std::vector<DarbouxScalar> functions;
};

// Reeb-invariant fixtures (no z dependence), polynomial and trigonometric.
Panel panel(int n) {
  using std::cos;
  using std::exp;
  using std::sin;
  Panel p{n, {}};
  if (n == 1) {
    p.functions.push_back(DarbouxScalar::analytic(1, [](auto v) { return v[0] * v[1] + 0.5 * v[0] - v[1] * v[1]; }));
    p.functions.push_back(DarbouxScalar::analytic(1, [](auto v) {
      return v[0] * v[0] * v[1] - 0.5 * v[1] * v[1] * v[1] + v[0] * v[0] * v[0] * v[0] * 0.25 + 1.0;
    }));
    p.functions.push_back(DarbouxScalar::analytic(1, [](auto v) { return sin(v[0]) * cos(2.0 * v[1]); }));
    p.functions.push_back(DarbouxScalar::analytic(1, [](auto v) { return exp(0.5 * v[0]) * sin(v[1]) + v[0] * v[0]; }));
  } else {
    // (x1, x2, y1, y2, z)
    p.functions.push_back(DarbouxScalar::analytic(2, [](auto v) { return v[0] * v[1] + v[2] * v[2] * v[3] - 0.3 * v[3]; }));
    p.functions.push_back(DarbouxScalar::analytic(2, [](auto v) {
      return v[0] * v[0] * v[2] + v[1] * v[3] * v[3] * v[3] - v[0] * v[1] * v[2] * v[3];
    }));
    p.functions.push_back(DarbouxScalar::analytic(2, [](auto v) { return sin(v[0] + v[3]) * cos(v[1] - v[2]); }));
    p.functions.push_back(DarbouxScalar::analytic(2, [](auto v) { return exp(0.3 * (v[0] - v[2])) * cos(v[1] * v[3]); }));
  }
  return p;
}

Panel without_partials(const Panel& p) {
  Panel q{p.n, {}};
  for (const auto& f : p.functions) q.functions.push_back(f.without_partials());
  return q;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (!(std::abs(x) <= m)) m = std::abs(x);
  }
  return m;
}

void update(double& worst, double r) {
  if (!(r <= worst)) worst = r;
}

void identity_checks(const Panel& panel, const std::vector<Point>& pts, const std::string& tag,
                     double threshold, VerifyReport& report) {
  const int n = panel.n;
  const int d = 2 * n + 1;
  std::vector<DarbouxVector> sf;
  for (const auto& f : panel.functions) sf.push_back(contact::s_theta(f));

  double r_theta = 0.0;
  double r_iota = 0.0;
  double r_lie = 0.0;
  double r_div = 0.0;
  std::vector<double> df(d);
  for (std::size_t i = 0; i < panel.functions.size(); ++i) {
    const auto& f = panel.functions[i];
    const DarbouxScalar th = contact::theta_of(sf[i]);
    for (const auto& p : pts) {
      update(r_theta, std::abs(th(p) - f(p)));
      f.gradient(p, df);
      const auto iota = contact::iota_dtheta(sf[i], p);
      for (int k = 0; k < d; ++k) update(r_iota, std::abs(iota[k] + df[k]));
      update(r_lie, max_abs(contact::lie_derivative_theta(sf[i], p)));
      update(r_div, std::abs(contact::divergence(sf[i], p)));
    }
  }
  report.add("contact", tag + " theta(S f) - f", r_theta, threshold);
  report.add("contact", tag + " iota_{S f} dtheta + df", r_iota, threshold);
  report.add("contact", tag + " L_theta(S f)", r_lie, threshold);
  report.add("contact", tag + " div S f", r_div, threshold);

  double r_hom = 0.0;
  double r_anti = 0.0;
  const std::size_t nf = panel.functions.size();
  for (std::size_t i = 0; i < nf; ++i) {
    for (std::size_t j = i + 1; j < nf; ++j) {
      const auto& f = panel.functions[i];
      const auto& g = panel.functions[j];
      const DarbouxScalar fg = contact::contact_bracket(f, g);
      const DarbouxScalar gf = contact::contact_bracket(g, f);
      const DarbouxVector lhs = contact::s_theta(fg);
      const DarbouxVector rhs = contact::lie_bracket(sf[i], sf[j]);
      for (const auto& p : pts) {
        const auto a = lhs(p);
        const auto b = rhs(p);
        for (int k = 0; k < d; ++k) update(r_hom, std::abs(a[k] - b[k]));
        update(r_anti, std::abs(fg(p) + gf(p)));
      }
    }
  }
  report.add("contact", tag + " S{f,g} - [S f, S g]", r_hom, threshold);
  report.add("contact", tag + " {f,g} + {g,f}", r_anti, threshold);

  double r_jac = 0.0;
  for (std::size_t i = 0; i < nf; ++i) {
    const auto& f = panel.functions[i];
    const auto& g = panel.functions[(i + 1) % nf];
    const auto& h = panel.functions[(i + 2) % nf];
    const DarbouxScalar a = contact::contact_bracket(f, contact::contact_bracket(g, h));
    const DarbouxScalar b = contact::contact_bracket(g, contact::contact_bracket(h, f));
    const DarbouxScalar c = contact::contact_bracket(h, contact::contact_bracket(f, g));
    for (const auto& p : pts) update(r_jac, std::abs(a(p) + b(p) + c(p)));
  }
  report.add("contact", tag + " Jacobi", r_jac, threshold);
}

// S^* S f against the closed-form second-order operator.
void composition_check(const Panel& panel, const std::vector<Point>& pts, const std::string& tag,
                       double threshold, VerifyReport& report) {
  double worst = 0.0;
  for (const auto& f : panel.functions) {
    const DarbouxScalar lhs = contact::s_theta_adjoint(contact::s_theta(f));
    const DarbouxScalar rhs = contact::contact_laplacian_darboux(f);
    for (const auto& p : pts) update(worst, std::abs(lhs(p) - rhs(p)));
  }
  report.add("contact", tag + " S*S f - Delta_theta f", worst, threshold);
}

// Compactly supported bumps: polynomial on each quadrature panel, so the
// composite Gauss rule below integrates every integrand exactly.
constexpr double kBumpRadius = 0.75;

template <class T>
T bump(const T& s) {
  if (std::abs(value_of(s)) >= kBumpRadius) return T(0.0);
  const T u = s * (1.0 / kBumpRadius);
  const T v = 1.0 - u * u;
  return v * v * v * v;
}

void adjoint_check(double threshold, VerifyReport& report) {
  // Panels [-1,-a], [-a,a], [a,1] with 12 nodes each.
  std::vector<double> nodes;
  std::vector<double> weights;
  for (auto [a, b] : {std::pair{-1.0, -kBumpRadius}, std::pair{-kBumpRadius, kBumpRadius},
                      std::pair{kBumpRadius, 1.0}}) {
    const auto rule = sphere::gauss_legendre(12, a, b);
    nodes.insert(nodes.end(), rule.nodes.begin(), rule.nodes.end());
    weights.insert(weights.end(), rule.weights.begin(), rule.weights.end());
  }

  std::vector<DarbouxScalar> fs = {
      DarbouxScalar::analytic(1, [](auto v) { return bump(v[0]) * bump(v[1]); }),
      DarbouxScalar::analytic(1, [](auto v) { return bump(v[0]) * bump(v[1]) * (1.0 + v[0] - 2.0 * v[1] * v[0]); }),
  };
  auto comp = [](auto shape) { return DarbouxScalar::analytic(1, shape); };
  std::vector<DarbouxVector> ws;
  ws.emplace_back(1, std::vector<DarbouxScalar>{
                         comp([](auto v) { return bump(v[0]) * bump(v[1]) * bump(v[2]) * v[1]; }),
                         comp([](auto v) { return bump(v[0]) * bump(v[1]) * bump(v[2]) * (v[0] - v[2]); }),
                         comp([](auto v) { return bump(v[0]) * bump(v[1]) * bump(v[2]) * (1.0 + v[0] * v[1]); }),
                     });
  ws.emplace_back(1, std::vector<DarbouxScalar>{
                         comp([](auto v) { return bump(v[0]) * bump(v[1]) * bump(v[2]) * (v[2] * v[2] - 0.5); }),
                         comp([](auto v) { return bump(v[0]) * bump(v[1]) * bump(v[2]) * 2.0; }),
                         comp([](auto v) { return bump(v[0]) * bump(v[1]) * bump(v[2]) * (v[1] - v[0] * v[2]); }),
                     });

  double worst = 0.0;
  for (const auto& f : fs) {
    const DarbouxVector sf = contact::s_theta(f);
    for (const auto& w : ws) {
      const DarbouxScalar sw = contact::s_theta_adjoint(w);
      double lhs = 0.0;
      double rhs = 0.0;
      Point p(3);
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        for (std::size_t j = 0; j < nodes.size(); ++j) {
          for (std::size_t k = 0; k < nodes.size(); ++k) {
            p = {nodes[i], nodes[j], nodes[k]};
            const double wt = weights[i] * weights[j] * weights[k];
            const auto u = sf(p);
            const auto wv = w(p);
            lhs += wt * (u[0] * wv[0] + u[1] * wv[1] + u[2] * wv[2]);
            rhs += wt * f(p) * sw(p);
          }
        }
      }
      update(worst, std::abs(lhs - rhs));
    }
  }
  report.add("contact", "n1 adjoint quadrature", worst, threshold);
}

// The identities above cancel algebraically for any consistent set of
// derivatives, so the difference path is also checked against exact jets.
void fd_consistency_check(const Panel& exact, const std::vector<Point>& pts, const std::string& tag,
                          double threshold, VerifyReport& report) {
  const Panel fd = without_partials(exact);
  const int d = 2 * exact.n + 1;
  double r_s = 0.0;
  double r_b = 0.0;
  double r_l = 0.0;
  const std::size_t nf = exact.functions.size();
  for (std::size_t i = 0; i < nf; ++i) {
    const DarbouxVector se = contact::s_theta(exact.functions[i]);
    const DarbouxVector sd = contact::s_theta(fd.functions[i]);
    const DarbouxScalar be = contact::contact_bracket(exact.functions[i], exact.functions[(i + 1) % nf]);
    const DarbouxScalar bd = contact::contact_bracket(fd.functions[i], fd.functions[(i + 1) % nf]);
    const DarbouxScalar le = contact::contact_laplacian_darboux(exact.functions[i]);
    const DarbouxScalar ld = contact::contact_laplacian_darboux(fd.functions[i]);
    for (const auto& p : pts) {
      const auto a = se(p);
      const auto b = sd(p);
      for (int k = 0; k < d; ++k) update(r_s, std::abs(a[k] - b[k]));
      update(r_b, std::abs(be(p) - bd(p)));
      update(r_l, std::abs(le(p) - ld(p)));
    }
  }
  report.add("contact", tag + " S f fd vs exact", r_s, threshold);
  report.add("contact", tag + " {f,g} fd vs exact", r_b, threshold);
  report.add("contact", tag + " Delta_theta f fd vs exact", r_l, threshold);
}

}  // namespace

VerifyReport run_contact_suite(const ContactSuiteOptions& opt) {
  VerifyReport report;
  for (int n : {1, 2}) {
    const auto pts = contact::sample_box(n, opt.points, opt.seed + static_cast<std::uint64_t>(n));
    const Panel exact = panel(n);
    const std::string tag = "n" + std::to_string(n);
    identity_checks(exact, pts, tag + " analytic", opt.analytic_threshold, report);
    identity_checks(without_partials(exact), pts, tag + " fd", opt.fd_threshold, report);
    fd_consistency_check(exact, pts, tag, opt.fd_threshold, report);
    composition_check(exact, pts, tag + " analytic", opt.analytic_threshold, report);
  }
  adjoint_check(opt.adjoint_threshold, report);
  return report;
}

}  // namespace qqg
