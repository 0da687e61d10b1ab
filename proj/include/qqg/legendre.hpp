#pragma once
// Gauss-Legendre quadrature and normalized associated Legendre functions.
//
// Q_lm(mu) = sqrt((2l+1)/(4 pi) (l-m)!/(l+m)!) P_l^m(mu), no Condon-Shortley
// phase, so that 2 pi * int_{-1}^{1} Q_lm^2 dmu = 1. The real orthonormal
// harmonics are Y_lm = s_m Q_l|m|(cos theta) {cos m lambda (m >= 0),
// sin |m| lambda (m < 0)} with s_0 = 1 and s_m = sqrt 2.

#include <cstddef>
#include <vector>

namespace qqg::sphere {

struct GaussLegendre {
  std::vector<double> nodes;    // ascending in (-1, 1)
  std::vector<double> weights;  // sum to 2
};

/// n-point rule on [-1, 1], exact for polynomials of degree <= 2n - 1.
GaussLegendre gauss_legendre(std::size_t n);

/// Same rule mapped to [a, b].
GaussLegendre gauss_legendre(std::size_t n, double a, double b);

/// Offset of (l, m), 0 <= m <= l <= lmax, in an m-major triangle.
inline std::size_t triangle_index(int lmax, int l, int m) {
  return static_cast<std::size_t>(m) * (2 * lmax + 3 - m) / 2 + static_cast<std::size_t>(l - m);
}
inline std::size_t triangle_size(int lmax) {
  return static_cast<std::size_t>(lmax + 1) * (lmax + 2) / 2;
}

/// Q_lm, dQ_lm/dtheta and (for m >= 1) Q_lm / sin(theta) at one colatitude,
/// stored in triangle order. All three stay finite at the poles.
struct LegendreColumn {
  std::vector<double> q;
  std::vector<double> dq_dtheta;
  std::vector<double> q_over_sin;
};

/// mu = cos(theta), s = sin(theta) >= 0 (passed separately for accuracy near the poles).
void evaluate_legendre(int lmax, double mu, double s, LegendreColumn& out);

/// s_m factor of the real harmonics.
double real_harmonic_scale(int m);

}  // namespace qqg::sphere
