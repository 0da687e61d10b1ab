#include "qqg/sph_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qqg::sphere {

SphField::SphField(int lmax, std::vector<double> coeffs) : lmax_(lmax), coeffs_(std::move(coeffs)) {
  if (lmax < 0) throw std::invalid_argument("SphField: lmax must be non-negative");
  if (coeffs_.size() != count(lmax)) {
    throw std::invalid_argument("SphField: expected " + std::to_string(count(lmax)) +
                                " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

SphField SphField::harmonic(int lmax, int l, int m, double amplitude) {
  if (l < 0 || l > lmax || m < -l || m > l) {
    throw std::invalid_argument("SphField::harmonic: (l, m) outside the band limit");
  }
  SphField f(lmax);
  f(l, m) = amplitude;
  return f;
}

static void require_same(const SphField& a, const SphField& b, const char* what) {
  if (a.lmax() != b.lmax()) {
    throw std::invalid_argument(std::string(what) + ": band limits differ (" +
                                std::to_string(a.lmax()) + " vs " + std::to_string(b.lmax()) + ")");
  }
}

SphField& SphField::operator+=(const SphField& o) {
  require_same(*this, o, "SphField +=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

SphField& SphField::operator-=(const SphField& o) {
  require_same(*this, o, "SphField -=");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

SphField& SphField::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

SphField& SphField::axpy(double a, const SphField& x) {
  require_same(*this, x, "SphField::axpy");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += a * x.coeffs_[i];
  return *this;
}

double SphField::l2_norm() const {
  double s = 0.0;
  for (double c : coeffs_) s += c * c;
  return std::sqrt(s);
}

double SphField::max_abs_coeff() const {
  double m = 0.0;
  // NaN propagates so that a blown-up field never looks small
  for (double c : coeffs_) {
    if (!(std::abs(c) <= m)) m = std::abs(c);
  }
  return m;
}

SphField SphField::resized(int lmax) const {
  SphField out(lmax);
  const int lc = std::min(lmax, lmax_);
  for (int l = 0; l <= lc; ++l) {
    for (int m = -l; m <= l; ++m) out(l, m) = (*this)(l, m);
  }
  return out;
}

double max_abs_diff(const SphField& a, const SphField& b) {
  require_same(a, b, "max_abs_diff");
  double m = 0.0;
  auto ca = a.coeffs();
  auto cb = b.coeffs();
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const double d = std::abs(ca[i] - cb[i]);
    if (!(d <= m)) m = d;
  }
  return m;
}

}  // namespace qqg::sphere
