#pragma once
// Gauss-Legendre x equiangular transform grid and its precomputed tables.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace qqg::sphere {

/// Grid values are stored row-major [nlat][nlon]; row j sits at mu_j (ascending
/// Gauss-Legendre nodes, south to north), column k at lambda_k = 2 pi k / nlon.
class SphGrid {
 public:
  /// Requires nlat >= lmax + 1 and nlon >= 2 lmax + 1 (exact analysis of
  /// band-limited fields).
  SphGrid(int lmax, int nlat, int nlon);
  ~SphGrid();
  SphGrid(const SphGrid&) = delete;
  SphGrid& operator=(const SphGrid&) = delete;

  /// Smallest exact grid for band limit lmax.
  static std::shared_ptr<const SphGrid> minimal(int lmax);
  /// Grid on which products of two band-limited fields are analyzed without
  /// aliasing (the 2/3 rule): nlat >= 3 lmax / 2 and nlon >= 3 lmax + 1.
  static std::shared_ptr<const SphGrid> dealiased(int lmax);
  /// Grid whose quadrature is exact for integrands of total degree k * lmax,
  /// e.g. the k-th power of a band-limited field. dealiased() is k = 3: two
  /// factors times the test harmonic of the analysis.
  static std::shared_ptr<const SphGrid> for_power(int lmax, int k);

  int lmax() const { return lmax_; }
  int nlat() const { return nlat_; }
  int nlon() const { return nlon_; }
  std::size_t npoints() const { return static_cast<std::size_t>(nlat_) * nlon_; }
  /// Number of complex Fourier modes stored per row by the real FFT.
  int nfreq() const { return nlon_ / 2 + 1; }

  std::span<const double> mu() const { return mu_; }
  std::span<const double> weights() const { return weights_; }
  double lambda(int k) const;

  /// s_m Q_lm(mu_j) for j = 0..nlat-1, contiguous in j.
  const double* value_row(int l, int m) const;
  /// d/dmu of the same.
  const double* dmu_row(int l, int m) const;

  /// Quadrature of grid values against the area measure.
  double integrate(std::span<const double> values) const;

  /// Real FFT of one row (nlon reals -> nfreq complex, unnormalized) and its
  /// inverse. Buffers must come from fftw_malloc; safe to call concurrently.
  void fft_forward(const double* in, void* out) const;
  void fft_backward(void* in, double* out) const;

 private:
  std::size_t row_offset(int l, int m) const;

  int lmax_;
  int nlat_;
  int nlon_;
  std::vector<double> mu_;
  std::vector<double> weights_;
  std::vector<double> value_table_;
  std::vector<double> dmu_table_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

/// FFT-friendly length >= n (factors 2, 3, 5 only).
int fft_friendly_size(int n);

}  // namespace qqg::sphere
