#pragma once
// Contact-geometric operators on R^{2n+1} in Darboux coordinates
// (x^1..x^n, y^1..y^n, z) with contact form theta = dz + sum_k x^k dy^k.
//
// Coordinate index layout: x^k -> k, y^k -> n + k, z -> 2n (k = 0..n-1).

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qqg/jet.hpp"

namespace qqg::contact {

using Point = std::vector<double>;

/// Thrown when an operator that needs E(f) = df/dz = 0 receives a function
/// whose z-partial is not small at one of the check points.
class NotReebInvariant : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scalar function on R^{2n+1}. Partials are exact when the closures are
/// supplied, otherwise central differences: first partials with fd_step,
/// second partials with fd_step2 (differences of exact first partials use
/// fd_step).
class DarbouxScalar {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using DerivFn = std::function<void(std::span<const double>, std::span<double>)>;

  DarbouxScalar(int n, ValueFn value, DerivFn gradient = {}, DerivFn hessian = {});

  /// Builds value, gradient and Hessian from one generic callable invoked with
  /// std::span<const double> or std::span<const Jet2>.
  template <class F>
  static DarbouxScalar analytic(int n, F f);

  /// Value-only function; every partial goes through finite differences.
  template <class F>
  static DarbouxScalar sampled(int n, F f) {
    return DarbouxScalar(n, [f](std::span<const double> p) { return f(p); });
  }

  int arity() const { return n_; }
  int dim() const { return 2 * n_ + 1; }

  double operator()(std::span<const double> p) const { return value_(p); }
  /// out has dim() entries.
  void gradient(std::span<const double> p, std::span<double> out) const;
  /// Row-major dim() x dim().
  void hessian(std::span<const double> p, std::span<double> out) const;
  double partial(int i, std::span<const double> p) const;

  bool has_exact_gradient() const { return static_cast<bool>(gradient_); }
  bool has_exact_hessian() const { return static_cast<bool>(hessian_); }

  /// Copy with analytic partials removed (forces the finite-difference path).
  DarbouxScalar without_partials() const;

  double fd_step() const { return fd_step_; }
  double fd_step2() const { return fd_step2_; }
  DarbouxScalar& set_fd_steps(double h1, double h2);

 private:
  int n_;
  ValueFn value_;
  DerivFn gradient_;
  DerivFn hessian_;
  double fd_step_ = 1e-5;
  double fd_step2_ = 1e-4;
};

/// Vector field sum_k (p^k d_{x^k} + q^k d_{y^k}) + r d_z, components stored
/// in coordinate order (p^1..p^n, q^1..q^n, r).
class DarbouxVector {
 public:
  DarbouxVector(int n, std::vector<DarbouxScalar> components);

  int arity() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  const DarbouxScalar& component(int i) const { return components_[i]; }
  const std::vector<DarbouxScalar>& components() const { return components_; }

  std::vector<double> operator()(std::span<const double> p) const;

 private:
  int n_;
  std::vector<DarbouxScalar> components_;
};

struct ReebCheck {
  std::vector<Point> points;
  double tolerance = 1e-6;
};

/// 32 seeded points in [-1,1]^{2n+1}, used when the caller gives none.
ReebCheck default_reeb_check(int n);

/// Throws NotReebInvariant when |df/dz| > tol * max(1, |f|) at a check point.
void require_reeb_invariant(const DarbouxScalar& f, const ReebCheck& check);

/// S_theta f = sum_k (-f_{y^k} d_{x^k} + f_{x^k} d_{y^k}) + (f - sum_k x^k f_{x^k}) d_z.
DarbouxVector s_theta(const DarbouxScalar& f, const ReebCheck& check);
DarbouxVector s_theta(const DarbouxScalar& f);

/// {f,g} = sum_k f_{x^k} g_{y^k} - f_{y^k} g_{x^k}; gradient built from the Hessians.
DarbouxScalar contact_bracket(const DarbouxScalar& f, const DarbouxScalar& g,
                              const ReebCheck& check);
DarbouxScalar contact_bracket(const DarbouxScalar& f, const DarbouxScalar& g);

/// Euclidean formal adjoint: (1+n) r + sum_k (dp^k/dy^k - dq^k/dx^k + x^k dr/dx^k).
DarbouxScalar s_theta_adjoint(const DarbouxVector& w);

/// S_theta^* S_theta f written out in second derivatives of f:
///   (1+n) f - (1+n) sum_k x^k f_{x^k} - sum_k (f_{x^k x^k} + f_{y^k y^k})
///   - sum_{j,k} x^j x^k f_{x^j x^k}.
/// For n = 1 this is 2f - d_x((1+x^2) f_x) - f_yy.
DarbouxScalar contact_laplacian_darboux(const DarbouxScalar& f);

/// The Reeb field d_z.
DarbouxVector reeb_field(int n);

/// theta(u) = r + sum_k x^k q^k as a scalar (gradient from component gradients).
DarbouxScalar theta_of(const DarbouxVector& u);

/// Components of the 1-form iota_u dtheta = sum_k (p^k dy^k - q^k dx^k).
std::vector<double> iota_dtheta(const DarbouxVector& u, std::span<const double> p);

/// Components of L_theta u = d(theta(u)) + iota_u dtheta.
std::vector<double> lie_derivative_theta(const DarbouxVector& u, std::span<const double> p);

/// [u,v]^i = u^j d_j v^i - v^j d_j u^i.
DarbouxVector lie_bracket(const DarbouxVector& u, const DarbouxVector& v);

/// Euclidean divergence sum_i d_i u^i.
double divergence(const DarbouxVector& u, std::span<const double> p);

/// Seeded uniform points in [-1,1]^{2n+1}.
std::vector<Point> sample_box(int n, std::size_t count, std::uint64_t seed);

// ---------------------------------------------------------------------------

template <class F>
DarbouxScalar DarbouxScalar::analytic(int n, F f) {
  const int d = 2 * n + 1;
  auto jet_eval = [f, d](std::span<const double> p) {
    std::array<Jet2, Jet2::kMaxDim> vars{};
    for (int i = 0; i < d; ++i) vars[i] = Jet2::variable(d, i, p[i]);
    return f(std::span<const Jet2>(vars.data(), static_cast<std::size_t>(d)));
  };
  return DarbouxScalar(
      n, [f](std::span<const double> p) { return f(p); },
      [jet_eval, d](std::span<const double> p, std::span<double> out) {
        const Jet2 j = jet_eval(p);
        for (int i = 0; i < d; ++i) out[i] = j.grad(i);
      },
      [jet_eval, d](std::span<const double> p, std::span<double> out) {
        const Jet2 j = jet_eval(p);
        for (int i = 0; i < d; ++i) {
          for (int k = 0; k < d; ++k) out[i * d + k] = j.hess(i, k);
        }
      });
}

}  // namespace qqg::contact
