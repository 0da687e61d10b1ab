#include "qqg/sph_grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "qqg/legendre.hpp"

namespace qqg::sphere {

namespace {

// FFTW planning is not thread-safe; execution with new-array calls is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

struct SphGrid::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

int fft_friendly_size(int n) {
  if (n < 1) return 1;
  for (int c = n;; ++c) {
    int r = c;
    for (int p : {2, 3, 5}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return c;
  }
}

SphGrid::SphGrid(int lmax, int nlat, int nlon) : lmax_(lmax), nlat_(nlat), nlon_(nlon) {
  if (lmax < 0) throw std::invalid_argument("SphGrid: lmax must be non-negative");
  if (nlat < lmax + 1) {
    throw std::invalid_argument("SphGrid: nlat = " + std::to_string(nlat) + " < lmax + 1");
  }
  if (nlon < 2 * lmax + 1) {
    throw std::invalid_argument("SphGrid: nlon = " + std::to_string(nlon) + " < 2 lmax + 1");
  }

  GaussLegendre rule = gauss_legendre(static_cast<std::size_t>(nlat));
  mu_ = std::move(rule.nodes);
  weights_ = std::move(rule.weights);

  const std::size_t tri = triangle_size(lmax);
  value_table_.assign(tri * nlat, 0.0);
  dmu_table_.assign(tri * nlat, 0.0);
  LegendreColumn col;
  for (int j = 0; j < nlat; ++j) {
    const double mu = mu_[j];
    const double s = std::sqrt((1.0 - mu) * (1.0 + mu));
    evaluate_legendre(lmax, mu, s, col);
    for (int m = 0; m <= lmax; ++m) {
      const double sm = real_harmonic_scale(m);
      for (int l = m; l <= lmax; ++l) {
        const std::size_t t = triangle_index(lmax, l, m);
        value_table_[t * nlat + j] = sm * col.q[t];
        // d/dmu = -(1 / sin theta) d/dtheta; Gauss nodes never hit the poles
        dmu_table_[t * nlat + j] = -sm * col.dq_dtheta[t] / s;
      }
    }
  }

  plans_ = std::make_unique<Plans>();
  std::lock_guard lock(planner_mutex());
  double* in = fftw_alloc_real(static_cast<std::size_t>(nlon));
  fftw_complex* out = fftw_alloc_complex(static_cast<std::size_t>(nfreq()));
  plans_->forward = fftw_plan_dft_r2c_1d(nlon, in, out, FFTW_ESTIMATE);
  plans_->backward = fftw_plan_dft_c2r_1d(nlon, out, in, FFTW_ESTIMATE | FFTW_DESTROY_INPUT);
  fftw_free(in);
  fftw_free(out);
  if (!plans_->forward || !plans_->backward) throw std::runtime_error("SphGrid: FFTW planning failed");
}

SphGrid::~SphGrid() = default;

namespace {

using GridKey = std::pair<int, int>;

std::shared_ptr<const SphGrid> cached(int lmax, int nlat, int nlon) {
  static std::mutex m;
  static std::map<std::pair<int, GridKey>, std::shared_ptr<const SphGrid>> cache;
  std::lock_guard lock(m);
  auto key = std::make_pair(lmax, GridKey{nlat, nlon});
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto grid = std::make_shared<const SphGrid>(lmax, nlat, nlon);
  cache.emplace(key, grid);
  return grid;
}

}  // namespace

std::shared_ptr<const SphGrid> SphGrid::minimal(int lmax) {
  return cached(lmax, lmax + 1, fft_friendly_size(2 * lmax + 1));
}

std::shared_ptr<const SphGrid> SphGrid::dealiased(int lmax) { return for_power(lmax, 3); }

std::shared_ptr<const SphGrid> SphGrid::for_power(int lmax, int k) {
  if (k < 1) throw std::invalid_argument("SphGrid::for_power: k must be >= 1");
  const int degree = k * lmax;
  const int nlat = std::max(lmax + 1, (degree + 2) / 2);
  const int nlon = fft_friendly_size(std::max(2 * lmax + 1, degree + 1));
  return cached(lmax, nlat, nlon);
}

double SphGrid::lambda(int k) const { return 2.0 * std::numbers::pi * k / nlon_; }

std::size_t SphGrid::row_offset(int l, int m) const {
  if (m < 0 || m > l || l > lmax_) throw std::out_of_range("SphGrid: (l, m) outside the table");
  return triangle_index(lmax_, l, m) * static_cast<std::size_t>(nlat_);
}

const double* SphGrid::value_row(int l, int m) const { return value_table_.data() + row_offset(l, m); }
const double* SphGrid::dmu_row(int l, int m) const { return dmu_table_.data() + row_offset(l, m); }

double SphGrid::integrate(std::span<const double> values) const {
  if (values.size() != npoints()) throw std::invalid_argument("SphGrid::integrate: size mismatch");
  double total = 0.0;
  for (int j = 0; j < nlat_; ++j) {
    double row = 0.0;
    const double* v = values.data() + static_cast<std::size_t>(j) * nlon_;
    for (int k = 0; k < nlon_; ++k) row += v[k];
    total += weights_[j] * row;
  }
  return total * 2.0 * std::numbers::pi / nlon_;
}

void SphGrid::fft_forward(const double* in, void* out) const {
  fftw_execute_dft_r2c(plans_->forward, const_cast<double*>(in), static_cast<fftw_complex*>(out));
}

void SphGrid::fft_backward(void* in, double* out) const {
  fftw_execute_dft_c2r(plans_->backward, static_cast<fftw_complex*>(in), out);
}

}  // namespace qqg::sphere
