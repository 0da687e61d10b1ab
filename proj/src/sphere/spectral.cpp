#include "qqg/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "qqg/kernels.hpp"
#include "qqg/legendre.hpp"
#include "qqg/parallel.hpp"

namespace qqg::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

// fftw_malloc-backed scratch, one per task.
template <class T>
struct FftwBuffer {
  T* p;
  explicit FftwBuffer(std::size_t n) : p(static_cast<T*>(fftw_malloc(sizeof(T) * n))) {
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

// Per-order Fourier coefficients along latitude: re[m][j], im[m][j] hold
// the cos / sin amplitudes of order m at row j.
struct Fourier {
  int mmax;
  int nlat;
  std::vector<double> re;
  std::vector<double> im;
  Fourier(int mmax_, int nlat_)
      : mmax(mmax_), nlat(nlat_),
        re(static_cast<std::size_t>(mmax_ + 1) * nlat_, 0.0),
        im(static_cast<std::size_t>(mmax_ + 1) * nlat_, 0.0) {}
  double* cos_row(int m) { return re.data() + static_cast<std::size_t>(m) * nlat; }
  double* sin_row(int m) { return im.data() + static_cast<std::size_t>(m) * nlat; }
};

enum class Table { Value, Dmu };

void require_fits(const SphField& f, const SphGrid& grid, const char* what) {
  if (f.lmax() > grid.lmax()) {
    throw std::invalid_argument(std::string(what) + ": field lmax " + std::to_string(f.lmax()) +
                                " exceeds grid lmax " + std::to_string(grid.lmax()));
  }
}

// Legendre stage of synthesis.
Fourier legendre_synthesis(const SphField& f, const SphGrid& grid, Table table) {
  const int L = f.lmax();
  const int nlat = grid.nlat();
  Fourier four(L, nlat);
  const auto& k = kernels::active();
  parallel_for(static_cast<std::size_t>(L + 1), [&](std::size_t mi) {
    const int m = static_cast<int>(mi);
    double* a = four.cos_row(m);
    double* b = four.sin_row(m);
    for (int l = m; l <= L; ++l) {
      const double* row = table == Table::Value ? grid.value_row(l, m) : grid.dmu_row(l, m);
      const double cc = f(l, m);
      const double cs = m > 0 ? f(l, -m) : 0.0;
      k.axpy2(cc, cs, row, a, b, static_cast<std::size_t>(nlat));
    }
  });
  return four;
}

// Fourier stage of synthesis: sum_m a_m cos(m lambda) + b_m sin(m lambda).
std::vector<double> fourier_synthesis(const Fourier& four, const SphGrid& grid) {
  const int nlat = grid.nlat();
  const int nlon = grid.nlon();
  const int nfreq = grid.nfreq();
  std::vector<double> out(grid.npoints());
  parallel_for(static_cast<std::size_t>(nlat), [&](std::size_t ji) {
    FftwBuffer<fftw_complex> spec(static_cast<std::size_t>(nfreq));
    FftwBuffer<double> row(static_cast<std::size_t>(nlon));
    for (int m = 0; m < nfreq; ++m) {
      spec.p[m][0] = 0.0;
      spec.p[m][1] = 0.0;
    }
    for (int m = 0; m <= four.mmax; ++m) {
      const double a = four.re[static_cast<std::size_t>(m) * nlat + ji];
      const double b = four.im[static_cast<std::size_t>(m) * nlat + ji];
      if (m == 0) {
        spec.p[0][0] = a;
      } else {
        spec.p[m][0] = 0.5 * a;
        spec.p[m][1] = -0.5 * b;
      }
    }
    grid.fft_backward(spec.p, row.p);
    std::copy(row.p, row.p + nlon, out.begin() + static_cast<std::ptrdiff_t>(ji * nlon));
  });
  return out;
}

// d/dlambda of a Fourier series in place.
void differentiate_lambda(Fourier& four) {
  for (int m = 0; m <= four.mmax; ++m) {
    double* a = four.cos_row(m);
    double* b = four.sin_row(m);
    for (int j = 0; j < four.nlat; ++j) {
      const double na = m * b[j];
      const double nb = -m * a[j];
      a[j] = na;
      b[j] = nb;
    }
  }
}

}  // namespace

std::vector<double> synthesize(const SphField& f, const SphGrid& grid) {
  require_fits(f, grid, "synthesize");
  return fourier_synthesis(legendre_synthesis(f, grid, Table::Value), grid);
}

GridGradient synthesize_gradient(const SphField& f, const SphGrid& grid) {
  require_fits(f, grid, "synthesize_gradient");
  GridGradient g;
  Fourier v = legendre_synthesis(f, grid, Table::Value);
  differentiate_lambda(v);
  g.dlambda = fourier_synthesis(v, grid);
  g.dmu = fourier_synthesis(legendre_synthesis(f, grid, Table::Dmu), grid);
  return g;
}

SphField analyze(std::span<const double> values, const SphGrid& grid) {
  return analyze(values, grid, grid.lmax());
}

SphField analyze(std::span<const double> values, const SphGrid& grid, int lmax) {
  if (values.size() != grid.npoints()) {
    throw std::invalid_argument("analyze: expected " + std::to_string(grid.npoints()) +
                                " grid values, got " + std::to_string(values.size()));
  }
  if (lmax < 0 || lmax > grid.lmax()) throw std::invalid_argument("analyze: lmax outside the grid band");
  const int nlat = grid.nlat();
  const int nlon = grid.nlon();
  const int nfreq = grid.nfreq();
  const auto w = grid.weights();
  const double scale = 2.0 * kPi / nlon;

  Fourier four(lmax, nlat);
  parallel_for(static_cast<std::size_t>(nlat), [&](std::size_t ji) {
    FftwBuffer<double> row(static_cast<std::size_t>(nlon));
    FftwBuffer<fftw_complex> spec(static_cast<std::size_t>(nfreq));
    std::copy(values.begin() + static_cast<std::ptrdiff_t>(ji * nlon),
              values.begin() + static_cast<std::ptrdiff_t>((ji + 1) * nlon), row.p);
    grid.fft_forward(row.p, spec.p);
    const double sw = scale * w[ji];
    for (int m = 0; m <= lmax; ++m) {
      four.re[static_cast<std::size_t>(m) * nlat + ji] = sw * spec.p[m][0];
      four.im[static_cast<std::size_t>(m) * nlat + ji] = -sw * spec.p[m][1];
    }
  });

  SphField out(lmax);
  const auto& k = kernels::active();
  parallel_for(static_cast<std::size_t>(lmax + 1), [&](std::size_t mi) {
    const int m = static_cast<int>(mi);
    const double* a = four.cos_row(m);
    const double* b = four.sin_row(m);
    double d[2];
    for (int l = m; l <= lmax; ++l) {
      k.dot2(grid.value_row(l, m), a, b, d, static_cast<std::size_t>(nlat));
      out(l, m) = d[0];
      if (m > 0) out(l, -m) = d[1];
    }
  });
  return out;
}

SphField laplacian(const SphField& f) {
  SphField out = f;
  for (int l = 0; l <= f.lmax(); ++l) {
    const double e = -static_cast<double>(l) * (l + 1);
    for (int m = -l; m <= l; ++m) out(l, m) *= e;
  }
  return out;
}

SphField helmholtz_apply(const SphField& f, double alpha2) {
  SphField out = f;
  for (int l = 0; l <= f.lmax(); ++l) {
    const double e = -(static_cast<double>(l) * (l + 1) + alpha2);
    for (int m = -l; m <= l; ++m) out(l, m) *= e;
  }
  return out;
}

SphField helmholtz_invert(const SphField& q, double alpha2, double mean_tol) {
  if (!(alpha2 >= 0.0)) throw std::invalid_argument("helmholtz_invert: alpha2 must be >= 0");
  SphField f = q;
  if (alpha2 == 0.0) {
    const double scale = std::max(q.max_abs_coeff(), 1e-300);
    if (std::abs(q(0, 0)) > mean_tol * scale) {
      throw Unsolvable("helmholtz_invert: alpha2 = 0 requires a mean-zero right-hand side (q_00 = " +
                       std::to_string(q(0, 0)) + ")");
    }
    f(0, 0) = 0.0;
  } else {
    f(0, 0) = -q(0, 0) / alpha2;
  }
  for (int l = 1; l <= q.lmax(); ++l) {
    const double e = -(static_cast<double>(l) * (l + 1) + alpha2);
    for (int m = -l; m <= l; ++m) f(l, m) /= e;
  }
  return f;
}

SphField dlambda(const SphField& f) {
  SphField out(f.lmax());
  for (int l = 1; l <= f.lmax(); ++l) {
    for (int m = 1; m <= l; ++m) {
      out(l, m) = m * f(l, -m);
      out(l, -m) = -m * f(l, m);
    }
  }
  return out;
}

SphField jacobian_bracket(const SphField& f, const SphField& g, const SphGrid& grid) {
  if (f.lmax() != g.lmax()) throw std::invalid_argument("jacobian_bracket: band limits differ");
  require_fits(f, grid, "jacobian_bracket");
  GridGradient df = synthesize_gradient(f, grid);
  GridGradient dg = synthesize_gradient(g, grid);
  std::vector<double> prod(grid.npoints());
  kernels::active().cross_diff(df.dlambda.data(), dg.dmu.data(), df.dmu.data(), dg.dlambda.data(),
                               prod.data(), prod.size());
  return analyze(prod, grid, f.lmax());
}

SphField jacobian_bracket(const SphField& f, const SphField& g) {
  return jacobian_bracket(f, g, *SphGrid::dealiased(f.lmax()));
}

SphField cos_theta_field(int lmax) {
  SphField f(lmax);
  if (lmax >= 1) f(1, 0) = std::sqrt(4.0 * kPi / 3.0);
  return f;
}

SphField constant_field(int lmax, double c) {
  SphField f(lmax);
  f(0, 0) = c * std::sqrt(4.0 * kPi);
  return f;
}

double integrate(const SphField& f) { return std::sqrt(4.0 * kPi) * f(0, 0); }

Vec3 unit_vector(double mu, double lambda) {
  const double s = std::sqrt(std::max(0.0, (1.0 - mu) * (1.0 + mu)));
  return {s * std::cos(lambda), s * std::sin(lambda), mu};
}

PointValue evaluate_at(const SphField& f, const Vec3& p) {
  const int L = f.lmax();
  const double r = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
  const double mu = p[2] / r;
  const double s = std::hypot(p[0], p[1]) / r;
  const double lam = s > 0.0 ? std::atan2(p[1], p[0]) : 0.0;

  thread_local LegendreColumn col;
  evaluate_legendre(L, mu, s, col);

  double value = 0.0;
  double d_theta = 0.0;
  double d_lambda_over_sin = 0.0;
  for (int m = 0; m <= L; ++m) {
    const double cm = std::cos(m * lam);
    const double sm = std::sin(m * lam);
    const double scale = real_harmonic_scale(m);
    double v = 0.0;
    double dt = 0.0;
    double dl = 0.0;
    for (int l = m; l <= L; ++l) {
      const std::size_t t = triangle_index(L, l, m);
      const double a = f(l, m);
      const double b = m > 0 ? f(l, -m) : 0.0;
      const double phase = a * cm + b * sm;
      v += col.q[t] * phase;
      dt += col.dq_dtheta[t] * phase;
      if (m > 0) dl += col.q_over_sin[t] * m * (b * cm - a * sm);
    }
    value += scale * v;
    d_theta += scale * dt;
    d_lambda_over_sin += scale * dl;
  }
  const double cl = std::cos(lam);
  const double sl = std::sin(lam);
  PointValue out;
  out.value = value;
  // e_theta = (mu cos, mu sin, -s), e_lambda = (-sin, cos, 0)
  out.gradient = {d_theta * mu * cl - d_lambda_over_sin * sl, d_theta * mu * sl + d_lambda_over_sin * cl,
                  -d_theta * s};
  return out;
}

double value_at(const SphField& f, const Vec3& p) { return evaluate_at(f, p).value; }

SphField random_band_field(int lmax, int lmin, int lmax_band, std::uint64_t seed, double rms) {
  if (lmin < 0 || lmin > lmax_band || lmax_band > lmax) {
    throw std::invalid_argument("random_band_field: need 0 <= lmin <= lmax_band <= lmax");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  SphField f(lmax);
  for (int l = lmin; l <= lmax_band; ++l) {
    for (int m = -l; m <= l; ++m) f(l, m) = normal(rng);
  }
  // mean square over the sphere = |c|^2 / (4 pi)
  const double norm = f.l2_norm() / std::sqrt(4.0 * kPi);
  if (norm > 0.0) f *= rms / norm;
  return f;
}

}  // namespace qqg::sphere
