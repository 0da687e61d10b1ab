#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qqg::sphere {

/// Real scalar field on S^2 as coefficients of the real orthonormal harmonics
/// Y_lm, 0 <= l <= lmax, -l <= m <= l. Layout is l-major: index = l*l + l + m.
/// Orthonormal with respect to the area measure of the unit sphere (total 4 pi).
class SphField {
 public:
  SphField() = default;
  explicit SphField(int lmax) : lmax_(lmax), coeffs_(count(lmax), 0.0) {
    if (lmax < 0) throw std::invalid_argument("SphField: lmax must be non-negative");
  }
  SphField(int lmax, std::vector<double> coeffs);

  static std::size_t count(int lmax) { return static_cast<std::size_t>(lmax + 1) * (lmax + 1); }
  static std::size_t index(int l, int m) { return static_cast<std::size_t>(l * l + l + m); }

  /// Single harmonic amplitude * Y_lm.
  static SphField harmonic(int lmax, int l, int m, double amplitude = 1.0);

  int lmax() const { return lmax_; }
  std::size_t size() const { return coeffs_.size(); }

  double& operator()(int l, int m) { return coeffs_[index(l, m)]; }
  double operator()(int l, int m) const { return coeffs_[index(l, m)]; }

  std::span<double> coeffs() { return coeffs_; }
  std::span<const double> coeffs() const { return coeffs_; }

  SphField& operator+=(const SphField& o);
  SphField& operator-=(const SphField& o);
  SphField& operator*=(double s);
  /// this += a * x
  SphField& axpy(double a, const SphField& x);

  friend SphField operator+(SphField a, const SphField& b) { return a += b; }
  friend SphField operator-(SphField a, const SphField& b) { return a -= b; }
  friend SphField operator*(double s, SphField a) { return a *= s; }
  friend SphField operator*(SphField a, double s) { return a *= s; }

  /// Coefficient-space L2 norm; equals the L2(S^2) norm of the field.
  double l2_norm() const;
  double max_abs_coeff() const;

  /// Zero-padded or truncated copy.
  SphField resized(int lmax) const;

  bool operator==(const SphField&) const = default;

 private:
  int lmax_ = 0;
  std::vector<double> coeffs_ = std::vector<double>(1, 0.0);
};

/// max_i |a_i - b_i|; the fields must share lmax.
double max_abs_diff(const SphField& a, const SphField& b);

}  // namespace qqg::sphere
