#pragma once
// Data-parallel inner loops of the spherical transforms.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2/FMA variant. The active table is picked once at startup from the CPU
// feature bits; QQG_KERNELS=scalar|avx2 forces a path. The variants are not
// bitwise identical (FMA contraction, reduction order) and are
// equivalence-tested against the scalar path.

#include <cstddef>
#include <string_view>
#include <vector>

namespace qqg::kernels {

enum class Path { Scalar, Avx2 };

struct Table {
  /// re[i] += a * x[i];  im[i] += b * x[i]
  void (*axpy2)(double a, double b, const double* x, double* re, double* im, std::size_t n);
  /// Returns (sum x[i]*u[i], sum x[i]*v[i]) through out[0], out[1].
  void (*dot2)(const double* x, const double* u, const double* v, double* out, std::size_t n);
  /// out[i] = a[i]*b[i] - c[i]*d[i]
  void (*cross_diff)(const double* a, const double* b, const double* c, const double* d,
                     double* out, std::size_t n);
  /// out[i] *= s[i]
  void (*scale_by)(const double* s, double* out, std::size_t n);
};

const Table& scalar_table();
/// nullptr when the variant was not compiled in.
const Table* avx2_table();

bool cpu_has_avx2();
std::vector<Path> available_paths();

/// Table for the currently selected path.
const Table& active();
Path active_path();
/// Throws std::invalid_argument if the path is not available on this machine.
void select(Path p);

std::string_view name(Path p);
Path parse_path(std::string_view s);

}  // namespace qqg::kernels
