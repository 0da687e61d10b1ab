#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "qqg/kernels.hpp"

namespace qqg::kernels {

#if defined(QQG_HAVE_AVX2)
const Table* avx2_table_impl();
#endif

const Table* avx2_table() {
#if defined(QQG_HAVE_AVX2)
  return avx2_table_impl();
#else
  return nullptr;
#endif
}

bool cpu_has_avx2() {
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::vector<Path> available_paths() {
  std::vector<Path> out{Path::Scalar};
  if (avx2_table() != nullptr && cpu_has_avx2()) out.push_back(Path::Avx2);
  return out;
}

std::string_view name(Path p) { return p == Path::Avx2 ? "avx2" : "scalar"; }

Path parse_path(std::string_view s) {
  if (s == "scalar") return Path::Scalar;
  if (s == "avx2") return Path::Avx2;
  throw std::invalid_argument("unknown kernel path '" + std::string(s) + "'");
}

namespace {

Path initial_path() {
  if (const char* env = std::getenv("QQG_KERNELS"); env != nullptr && *env != '\0') {
    const Path p = parse_path(env);
    if (p == Path::Avx2 && !(avx2_table() != nullptr && cpu_has_avx2())) {
      throw std::runtime_error("QQG_KERNELS=avx2 requested but AVX2/FMA is unavailable");
    }
    return p;
  }
  return (avx2_table() != nullptr && cpu_has_avx2()) ? Path::Avx2 : Path::Scalar;
}

std::atomic<Path>& current() {
  static std::atomic<Path> path{initial_path()};
  return path;
}

}  // namespace

Path active_path() { return current().load(std::memory_order_relaxed); }

const Table& active() {
  return active_path() == Path::Avx2 ? *avx2_table() : scalar_table();
}

void select(Path p) {
  if (p == Path::Avx2 && !(avx2_table() != nullptr && cpu_has_avx2())) {
    throw std::invalid_argument("AVX2 kernels are not available on this machine");
  }
  current().store(p, std::memory_order_relaxed);
}

}  // namespace qqg::kernels
