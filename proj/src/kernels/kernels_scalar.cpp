#include "qqg/kernels.hpp"

namespace qqg::kernels {
namespace {

void axpy2_scalar(double a, double b, const double* x, double* re, double* im, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    re[i] += a * x[i];
    im[i] += b * x[i];
  }
}

void dot2_scalar(const double* x, const double* u, const double* v, double* out, std::size_t n) {
  double su = 0.0;
  double sv = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    su += x[i] * u[i];
    sv += x[i] * v[i];
  }
  out[0] = su;
  out[1] = sv;
}

void cross_diff_scalar(const double* a, const double* b, const double* c, const double* d,
                       double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i] - c[i] * d[i];
}

void scale_by_scalar(const double* s, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] *= s[i];
}

constexpr Table kScalar{axpy2_scalar, dot2_scalar, cross_diff_scalar, scale_by_scalar};

}  // namespace

const Table& scalar_table() { return kScalar; }

}  // namespace qqg::kernels
