#pragma once
// Spherical-harmonic transforms and the spectral operators built on them.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "qqg/sph_field.hpp"
#include "qqg/sph_grid.hpp"

namespace qqg::sphere {

using Vec3 = std::array<double, 3>;

/// (Delta - alpha2) f = q has no solution: alpha2 = 0 and q has nonzero mean.
struct Unsolvable : std::domain_error {
  using std::domain_error::domain_error;
};

/// Grid values of f (f.lmax() <= grid.lmax()), row-major [nlat][nlon].
std::vector<double> synthesize(const SphField& f, const SphGrid& grid);

/// Quadrature projection onto Y_lm, l <= lmax (default: the grid's band limit).
SphField analyze(std::span<const double> values, const SphGrid& grid);
SphField analyze(std::span<const double> values, const SphGrid& grid, int lmax);

struct GridGradient {
  std::vector<double> dlambda;  // df/dlambda
  std::vector<double> dmu;      // df/dmu, mu = cos theta
};
GridGradient synthesize_gradient(const SphField& f, const SphGrid& grid);

/// Coefficientwise -l(l+1).
SphField laplacian(const SphField& f);
/// (Delta - alpha2) f.
SphField helmholtz_apply(const SphField& f, double alpha2);
/// Solves (Delta - alpha2) f = q. With alpha2 = 0 the mean of q must vanish
/// (|q_00| <= mean_tol * max|q|) and the returned f has zero mean.
SphField helmholtz_invert(const SphField& q, double alpha2, double mean_tol = 1e-12);

/// d/dlambda, exact in coefficient space.
SphField dlambda(const SphField& f);

/// {f, g} = f_lambda g_mu - f_mu g_lambda, products formed on `grid` and
/// truncated to f.lmax(). Both fields must share lmax.
SphField jacobian_bracket(const SphField& f, const SphField& g, const SphGrid& grid);
/// Same on the cached alias-free grid for f.lmax().
SphField jacobian_bracket(const SphField& f, const SphField& g);

/// cos(theta) = mu as a field.
SphField cos_theta_field(int lmax);
SphField constant_field(int lmax, double c);

/// Integral over the unit sphere (area measure).
double integrate(const SphField& f);

struct PointValue {
  double value = 0.0;
  Vec3 gradient{};  // tangent gradient in R^3
};
/// Direct harmonic summation at a unit vector; exact for band-limited f.
PointValue evaluate_at(const SphField& f, const Vec3& p);
double value_at(const SphField& f, const Vec3& p);

/// iid standard normal coefficients on lmin <= l <= lmax_band, rescaled so the
/// field has root-mean-square value `rms` over the sphere.
SphField random_band_field(int lmax, int lmin, int lmax_band, std::uint64_t seed, double rms = 1.0);

/// Unit vector from colatitude-cosine and longitude.
Vec3 unit_vector(double mu, double lambda);

}  // namespace qqg::sphere
