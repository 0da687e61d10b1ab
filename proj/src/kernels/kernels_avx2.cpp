// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "qqg/kernels.hpp"

namespace qqg::kernels {
namespace {

void axpy2_avx2(double a, double b, const double* x, double* re, double* im, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vx = _mm256_loadu_pd(x + i);
    _mm256_storeu_pd(re + i, _mm256_fmadd_pd(va, vx, _mm256_loadu_pd(re + i)));
    _mm256_storeu_pd(im + i, _mm256_fmadd_pd(vb, vx, _mm256_loadu_pd(im + i)));
  }
  for (; i < n; ++i) {
    re[i] += a * x[i];
    im[i] += b * x[i];
  }
}

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void dot2_avx2(const double* x, const double* u, const double* v, double* out, std::size_t n) {
  __m256d su0 = _mm256_setzero_pd();
  __m256d sv0 = _mm256_setzero_pd();
  __m256d su1 = _mm256_setzero_pd();
  __m256d sv1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(x + i);
    const __m256d x1 = _mm256_loadu_pd(x + i + 4);
    su0 = _mm256_fmadd_pd(x0, _mm256_loadu_pd(u + i), su0);
    sv0 = _mm256_fmadd_pd(x0, _mm256_loadu_pd(v + i), sv0);
    su1 = _mm256_fmadd_pd(x1, _mm256_loadu_pd(u + i + 4), su1);
    sv1 = _mm256_fmadd_pd(x1, _mm256_loadu_pd(v + i + 4), sv1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d x0 = _mm256_loadu_pd(x + i);
    su0 = _mm256_fmadd_pd(x0, _mm256_loadu_pd(u + i), su0);
    sv0 = _mm256_fmadd_pd(x0, _mm256_loadu_pd(v + i), sv0);
  }
  double su = hsum(_mm256_add_pd(su0, su1));
  double sv = hsum(_mm256_add_pd(sv0, sv1));
  for (; i < n; ++i) {
    su += x[i] * u[i];
    sv += x[i] * v[i];
  }
  out[0] = su;
  out[1] = sv;
}

void cross_diff_avx2(const double* a, const double* b, const double* c, const double* d,
                     double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d cd = _mm256_mul_pd(_mm256_loadu_pd(c + i), _mm256_loadu_pd(d + i));
    _mm256_storeu_pd(out + i, _mm256_fmsub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), cd));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i] - c[i] * d[i];
}

void scale_by_avx2(const double* s, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(s + i), _mm256_loadu_pd(out + i)));
  }
  for (; i < n; ++i) out[i] *= s[i];
}

constexpr Table kAvx2{axpy2_avx2, dot2_avx2, cross_diff_avx2, scale_by_avx2};

}  // namespace

const Table* avx2_table_impl() { return &kAvx2; }

}  // namespace qqg::kernels
