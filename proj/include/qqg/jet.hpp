#pragma once
// Second-order forward-mode jets: value, gradient and Hessian carried through
// arithmetic. Used to give analytic test functions exact partial derivatives.

#include <array>
#include <cmath>
#include <cstddef>

namespace qqg {

class Jet2 {
 public:
  static constexpr int kMaxDim = 7;

  Jet2() = default;
  Jet2(double v) : v_(v) {}  // NOLINT: constants promote implicitly

  static Jet2 variable(int dim, int index, double value) {
    Jet2 j(value);
    j.dim_ = dim;
    j.g_[index] = 1.0;
    return j;
  }

  double value() const { return v_; }
  double grad(int i) const { return g_[i]; }
  double hess(int i, int k) const { return h_[i * kMaxDim + k]; }
  int dim() const { return dim_; }

  /// Chain rule for a scalar map with derivatives d1 = phi'(v), d2 = phi''(v).
  Jet2 apply(double phi, double d1, double d2) const {
    Jet2 r(phi);
    r.dim_ = dim_;
    for (int i = 0; i < dim_; ++i) {
      r.g_[i] = d1 * g_[i];
      for (int k = 0; k < dim_; ++k) {
        r.h_[i * kMaxDim + k] = d1 * h_[i * kMaxDim + k] + d2 * g_[i] * g_[k];
      }
    }
    return r;
  }

  Jet2& operator+=(const Jet2& o) {
    dim_ = dim_ > o.dim_ ? dim_ : o.dim_;
    v_ += o.v_;
    for (int i = 0; i < dim_; ++i) g_[i] += o.g_[i];
    for (int i = 0; i < kMaxDim * kMaxDim; ++i) h_[i] += o.h_[i];
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    dim_ = dim_ > o.dim_ ? dim_ : o.dim_;
    v_ -= o.v_;
    for (int i = 0; i < dim_; ++i) g_[i] -= o.g_[i];
    for (int i = 0; i < kMaxDim * kMaxDim; ++i) h_[i] -= o.h_[i];
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    Jet2 r(v_ * o.v_);
    r.dim_ = dim_ > o.dim_ ? dim_ : o.dim_;
    for (int i = 0; i < r.dim_; ++i) {
      r.g_[i] = v_ * o.g_[i] + o.v_ * g_[i];
      for (int k = 0; k < r.dim_; ++k) {
        const int ik = i * kMaxDim + k;
        r.h_[ik] = v_ * o.h_[ik] + o.v_ * h_[ik] + g_[i] * o.g_[k] + o.g_[i] * g_[k];
      }
    }
    return *this = r;
  }
  Jet2& operator/=(const Jet2& o) {
    const double inv = 1.0 / o.v_;
    return *this *= o.apply(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  Jet2 operator-() const { return apply(-v_, -1.0, 0.0); }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }

 private:
  double v_ = 0.0;
  int dim_ = 0;
  std::array<double, kMaxDim> g_{};
  std::array<double, kMaxDim * kMaxDim> h_{};
};

inline Jet2 sin(const Jet2& x) {
  const double s = std::sin(x.value());
  return x.apply(s, std::cos(x.value()), -s);
}
inline Jet2 cos(const Jet2& x) {
  const double c = std::cos(x.value());
  return x.apply(c, -std::sin(x.value()), -c);
}
inline Jet2 exp(const Jet2& x) {
  const double e = std::exp(x.value());
  return x.apply(e, e, e);
}
inline Jet2 log(const Jet2& x) {
  const double inv = 1.0 / x.value();
  return x.apply(std::log(x.value()), inv, -inv * inv);
}
inline Jet2 sqrt(const Jet2& x) {
  const double s = std::sqrt(x.value());
  return x.apply(s, 0.5 / s, -0.25 / (s * x.value()));
}
inline Jet2 pow(const Jet2& x, int k) {
  if (k == 0) return Jet2(1.0);
  if (k == 1) return x;
  const double v = x.value();
  const double p2 = std::pow(v, k - 2);
  return x.apply(p2 * v * v, k * p2 * v, k * (k - 1) * p2);
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet2& x) { return x.value(); }

}  // namespace qqg
