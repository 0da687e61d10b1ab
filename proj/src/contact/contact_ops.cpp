#include "qqg/contact_ops.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace qqg::contact {

namespace {

void check_arity(int n) {
  if (n < 1 || 2 * n + 1 > Jet2::kMaxDim) {
    throw ArityMismatch("Darboux arity must be in [1, 3]");
  }
}

void same_arity(int a, int b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": arity " << a << " vs " << b;
    throw ArityMismatch(os.str());
  }
}

}  // namespace

DarbouxScalar::DarbouxScalar(int n, ValueFn value, DerivFn gradient, DerivFn hessian)
    : n_(n), value_(std::move(value)), gradient_(std::move(gradient)), hessian_(std::move(hessian)) {
  check_arity(n);
}

DarbouxScalar& DarbouxScalar::set_fd_steps(double h1, double h2) {
  if (!(h1 > 0.0) || !(h2 > 0.0)) throw std::invalid_argument("fd steps must be positive");
  fd_step_ = h1;
  fd_step2_ = h2;
  return *this;
}

DarbouxScalar DarbouxScalar::without_partials() const {
  DarbouxScalar copy(n_, value_);
  copy.fd_step_ = fd_step_;
  copy.fd_step2_ = fd_step2_;
  return copy;
}

void DarbouxScalar::gradient(std::span<const double> p, std::span<double> out) const {
  if (gradient_) {
    gradient_(p, out);
    return;
  }
  const int d = dim();
  Point q(p.begin(), p.end());
  for (int i = 0; i < d; ++i) {
    const double xi = q[i];
    q[i] = xi + fd_step_;
    const double fp = value_(q);
    q[i] = xi - fd_step_;
    const double fm = value_(q);
    q[i] = xi;
    out[i] = (fp - fm) / (2.0 * fd_step_);
  }
}

double DarbouxScalar::partial(int i, std::span<const double> p) const {
  std::array<double, Jet2::kMaxDim> g{};
  gradient(p, std::span<double>(g.data(), static_cast<std::size_t>(dim())));
  return g[i];
}

void DarbouxScalar::hessian(std::span<const double> p, std::span<double> out) const {
  const int d = dim();
  if (hessian_) {
    hessian_(p, out);
    return;
  }
  Point q(p.begin(), p.end());
  if (gradient_) {
    std::array<double, Jet2::kMaxDim> gp{};
    std::array<double, Jet2::kMaxDim> gm{};
    for (int k = 0; k < d; ++k) {
      const double xk = q[k];
      q[k] = xk + fd_step_;
      gradient_(q, gp);
      q[k] = xk - fd_step_;
      gradient_(q, gm);
      q[k] = xk;
      for (int i = 0; i < d; ++i) out[i * d + k] = (gp[i] - gm[i]) / (2.0 * fd_step_);
    }
    // symmetrize: the two one-sided orderings carry independent round-off
    for (int i = 0; i < d; ++i) {
      for (int k = i + 1; k < d; ++k) {
        const double s = 0.5 * (out[i * d + k] + out[k * d + i]);
        out[i * d + k] = s;
        out[k * d + i] = s;
      }
    }
    return;
  }
  const double h = fd_step2_;
  const double f0 = value_(q);
  for (int i = 0; i < d; ++i) {
    const double xi = q[i];
    q[i] = xi + h;
    const double fp = value_(q);
    q[i] = xi - h;
    const double fm = value_(q);
    q[i] = xi;
    out[i * d + i] = (fp - 2.0 * f0 + fm) / (h * h);
    for (int k = i + 1; k < d; ++k) {
      const double xk = q[k];
      double acc = 0.0;
      for (int si = -1; si <= 1; si += 2) {
        for (int sk = -1; sk <= 1; sk += 2) {
          q[i] = xi + si * h;
          q[k] = xk + sk * h;
          acc += si * sk * value_(q);
        }
      }
      q[i] = xi;
      q[k] = xk;
      out[i * d + k] = acc / (4.0 * h * h);
      out[k * d + i] = out[i * d + k];
    }
  }
}

DarbouxVector::DarbouxVector(int n, std::vector<DarbouxScalar> components)
    : n_(n), components_(std::move(components)) {
  check_arity(n);
  if (static_cast<int>(components_.size()) != 2 * n + 1) {
    throw ArityMismatch("DarbouxVector needs exactly 2n+1 components");
  }
  for (const auto& c : components_) same_arity(c.arity(), n, "DarbouxVector component");
}

std::vector<double> DarbouxVector::operator()(std::span<const double> p) const {
  std::vector<double> out(components_.size());
  for (std::size_t i = 0; i < components_.size(); ++i) out[i] = components_[i](p);
  return out;
}

std::vector<Point> sample_box(int n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Point> pts(count, Point(static_cast<std::size_t>(2 * n + 1)));
  for (auto& p : pts) {
    for (auto& c : p) c = u(rng);
  }
  return pts;
}

ReebCheck default_reeb_check(int n) { return ReebCheck{sample_box(n, 32, 0x5eebu + n), 1e-6}; }

void require_reeb_invariant(const DarbouxScalar& f, const ReebCheck& check) {
  const int z = 2 * f.arity();
  for (const auto& p : check.points) {
    const double fz = f.partial(z, p);
    const double scale = std::max(1.0, std::abs(f(p)));
    if (!(std::abs(fz) <= check.tolerance * scale)) {
      std::ostringstream os;
      os << "function is not Reeb-invariant: |df/dz| = " << std::abs(fz) << " at a check point";
      throw NotReebInvariant(os.str());
    }
  }
}

DarbouxVector s_theta(const DarbouxScalar& f) { return s_theta(f, default_reeb_check(f.arity())); }

DarbouxVector s_theta(const DarbouxScalar& f, const ReebCheck& check) {
  require_reeb_invariant(f, check);
  const int n = f.arity();
  const int d = 2 * n + 1;
  std::vector<DarbouxScalar> comps;
  comps.reserve(d);

  // p^k = -f_{y^k}, q^k = f_{x^k}; gradients are rows of the Hessian.
  auto derivative_component = [&](int index, double sign) {
    return DarbouxScalar(
        n,
        [f, index, sign, d](std::span<const double> p) {
          std::array<double, Jet2::kMaxDim> g{};
          f.gradient(p, std::span<double>(g.data(), d));
          return sign * g[index];
        },
        [f, index, sign, d](std::span<const double> p, std::span<double> out) {
          std::array<double, Jet2::kMaxDim * Jet2::kMaxDim> h{};
          f.hessian(p, std::span<double>(h.data(), d * d));
          for (int i = 0; i < d; ++i) out[i] = sign * h[index * d + i];
        });
  };
  for (int k = 0; k < n; ++k) comps.push_back(derivative_component(n + k, -1.0));
  for (int k = 0; k < n; ++k) comps.push_back(derivative_component(k, 1.0));

  // r = f - sum_k x^k f_{x^k}
  comps.emplace_back(
      n,
      [f, n, d](std::span<const double> p) {
        std::array<double, Jet2::kMaxDim> g{};
        f.gradient(p, std::span<double>(g.data(), d));
        double r = f(p);
        for (int k = 0; k < n; ++k) r -= p[k] * g[k];
        return r;
      },
      [f, n, d](std::span<const double> p, std::span<double> out) {
        std::array<double, Jet2::kMaxDim> g{};
        std::array<double, Jet2::kMaxDim * Jet2::kMaxDim> h{};
        f.gradient(p, std::span<double>(g.data(), d));
        f.hessian(p, std::span<double>(h.data(), d * d));
        for (int i = 0; i < d; ++i) {
          double v = g[i];
          for (int k = 0; k < n; ++k) v -= p[k] * h[k * d + i];
          if (i < n) v -= g[i];
          out[i] = v;
        }
      });
  return DarbouxVector(n, std::move(comps));
}

DarbouxScalar contact_bracket(const DarbouxScalar& f, const DarbouxScalar& g) {
  return contact_bracket(f, g, default_reeb_check(f.arity()));
}

DarbouxScalar contact_bracket(const DarbouxScalar& f, const DarbouxScalar& g,
                              const ReebCheck& check) {
  same_arity(f.arity(), g.arity(), "contact_bracket");
  require_reeb_invariant(f, check);
  require_reeb_invariant(g, check);
  const int n = f.arity();
  const int d = 2 * n + 1;
  return DarbouxScalar(
      n,
      [f, g, n, d](std::span<const double> p) {
        std::array<double, Jet2::kMaxDim> gf{};
        std::array<double, Jet2::kMaxDim> gg{};
        f.gradient(p, std::span<double>(gf.data(), d));
        g.gradient(p, std::span<double>(gg.data(), d));
        double s = 0.0;
        for (int k = 0; k < n; ++k) s += gf[k] * gg[n + k] - gf[n + k] * gg[k];
        return s;
      },
      [f, g, n, d](std::span<const double> p, std::span<double> out) {
        std::array<double, Jet2::kMaxDim> gf{};
        std::array<double, Jet2::kMaxDim> gg{};
        std::array<double, Jet2::kMaxDim * Jet2::kMaxDim> hf{};
        std::array<double, Jet2::kMaxDim * Jet2::kMaxDim> hg{};
        f.gradient(p, std::span<double>(gf.data(), d));
        g.gradient(p, std::span<double>(gg.data(), d));
        f.hessian(p, std::span<double>(hf.data(), d * d));
        g.hessian(p, std::span<double>(hg.data(), d * d));
        for (int i = 0; i < d; ++i) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) {
            const int x = k;
            const int y = n + k;
            s += hf[x * d + i] * gg[y] + gf[x] * hg[y * d + i] - hf[y * d + i] * gg[x] -
                 gf[y] * hg[x * d + i];
          }
          out[i] = s;
        }
      });
}

DarbouxScalar s_theta_adjoint(const DarbouxVector& w) {
  const int n = w.arity();
  const int d = 2 * n + 1;
  return DarbouxScalar(n, [w, n, d](std::span<const double> p) {
    std::array<double, Jet2::kMaxDim> g{};
    const auto& r = w.component(2 * n);
    r.gradient(p, std::span<double>(g.data(), d));
    double s = (1.0 + n) * r(p);
    for (int k = 0; k < n; ++k) s += p[k] * g[k];
    for (int k = 0; k < n; ++k) {
      s += w.component(k).partial(n + k, p);
      s -= w.component(n + k).partial(k, p);
    }
    return s;
  });
}

DarbouxScalar contact_laplacian_darboux(const DarbouxScalar& f) {
  const int n = f.arity();
  const int d = 2 * n + 1;
  return DarbouxScalar(n, [f, n, d](std::span<const double> p) {
    std::array<double, Jet2::kMaxDim> g{};
    std::array<double, Jet2::kMaxDim * Jet2::kMaxDim> h{};
    f.gradient(p, std::span<double>(g.data(), d));
    f.hessian(p, std::span<double>(h.data(), d * d));
    double s = (1.0 + n) * f(p);
    for (int k = 0; k < n; ++k) {
      s -= (1.0 + n) * p[k] * g[k];
      s -= h[k * d + k] + h[(n + k) * d + (n + k)];
      for (int j = 0; j < n; ++j) s -= p[j] * p[k] * h[j * d + k];
    }
    return s;
  });
}

DarbouxVector reeb_field(int n) {
  std::vector<DarbouxScalar> comps;
  const int d = 2 * n + 1;
  auto constant = [n, d](double c) {
    return DarbouxScalar(
        n, [c](std::span<const double>) { return c; },
        [d](std::span<const double>, std::span<double> out) {
          std::fill(out.begin(), out.begin() + d, 0.0);
        },
        [d](std::span<const double>, std::span<double> out) {
          std::fill(out.begin(), out.begin() + d * d, 0.0);
        });
  };
  for (int i = 0; i < d - 1; ++i) comps.push_back(constant(0.0));
  comps.push_back(constant(1.0));
  return DarbouxVector(n, std::move(comps));
}

DarbouxScalar theta_of(const DarbouxVector& u) {
  const int n = u.arity();
  const int d = 2 * n + 1;
  return DarbouxScalar(
      n,
      [u, n](std::span<const double> p) {
        double s = u.component(2 * n)(p);
        for (int k = 0; k < n; ++k) s += p[k] * u.component(n + k)(p);
        return s;
      },
      [u, n, d](std::span<const double> p, std::span<double> out) {
        std::array<double, Jet2::kMaxDim> g{};
        u.component(2 * n).gradient(p, std::span<double>(out.data(), d));
        for (int k = 0; k < n; ++k) {
          const auto& q = u.component(n + k);
          q.gradient(p, std::span<double>(g.data(), d));
          for (int i = 0; i < d; ++i) out[i] += p[k] * g[i];
          out[k] += q(p);
        }
      });
}

std::vector<double> iota_dtheta(const DarbouxVector& u, std::span<const double> p) {
  const int n = u.arity();
  std::vector<double> form(2 * n + 1, 0.0);
  for (int k = 0; k < n; ++k) {
    form[n + k] = u.component(k)(p);    // p^k dy^k
    form[k] = -u.component(n + k)(p);  // -q^k dx^k
  }
  return form;
}

std::vector<double> lie_derivative_theta(const DarbouxVector& u, std::span<const double> p) {
  std::vector<double> form = iota_dtheta(u, p);
  std::vector<double> dtheta(form.size());
  theta_of(u).gradient(p, dtheta);
  for (std::size_t i = 0; i < form.size(); ++i) form[i] += dtheta[i];
  return form;
}

DarbouxVector lie_bracket(const DarbouxVector& u, const DarbouxVector& v) {
  same_arity(u.arity(), v.arity(), "lie_bracket");
  const int n = u.arity();
  const int d = 2 * n + 1;
  std::vector<DarbouxScalar> comps;
  comps.reserve(d);
  for (int i = 0; i < d; ++i) {
    comps.emplace_back(n, [u, v, i, d](std::span<const double> p) {
      std::array<double, Jet2::kMaxDim> gu{};
      std::array<double, Jet2::kMaxDim> gv{};
      u.component(i).gradient(p, std::span<double>(gu.data(), d));
      v.component(i).gradient(p, std::span<double>(gv.data(), d));
      double s = 0.0;
      for (int j = 0; j < d; ++j) s += u.component(j)(p) * gv[j] - v.component(j)(p) * gu[j];
      return s;
    });
  }
  return DarbouxVector(n, std::move(comps));
}

double divergence(const DarbouxVector& u, std::span<const double> p) {
  double s = 0.0;
  for (int i = 0; i < u.dim(); ++i) s += u.component(i).partial(i, p);
  return s;
}

}  // namespace qqg::contact
