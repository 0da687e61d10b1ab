#include "qqg/hopf_s3.hpp"

#include <cmath>
#include <random>

namespace qqg::hopf {

Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

double norm(const Quaternion& q) { return std::sqrt(q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z); }

Quaternion normalized(const Quaternion& q) {
  const double n = norm(q);
  if (!(n > 0.0)) throw std::invalid_argument("normalized: zero quaternion");
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

Quaternion frame_unit(int i) {
  switch (i) {
    case 1: return {0.0, 1.0, 0.0, 0.0};  // i
    case 2: return {0.0, 0.0, 0.0, 1.0};  // k
    case 3: return {0.0, 0.0, 1.0, 0.0};  // j
    default: throw std::out_of_range("frame index must be 1, 2 or 3");
  }
}

Quaternion frame_exp(int i, double t) {
  const Quaternion e = frame_unit(i);
  const double s = std::sin(t);
  return {std::cos(t), e.x * s, e.y * s, e.z * s};
}

double left_invariant_derivative(const S3Function& f, int i, const Quaternion& q, double h) {
  return (f(q * frame_exp(i, h)) - f(q * frame_exp(i, -h))) / (2.0 * h);
}

double left_invariant_second(const S3Function& f, int i, int j, const Quaternion& q, double h) {
  if (i == j) {
    return (f(q * frame_exp(i, h)) - 2.0 * f(q) + f(q * frame_exp(i, -h))) / (h * h);
  }
  // E_i E_j f(q) = d/ds d/dt f(q exp(s e_i) exp(t e_j))
  double acc = 0.0;
  for (int si = -1; si <= 1; si += 2) {
    for (int sj = -1; sj <= 1; sj += 2) {
      acc += si * sj * f(q * frame_exp(i, si * h) * frame_exp(j, sj * h));
    }
  }
  return acc / (4.0 * h * h);
}

double berger_contact_laplacian(const S3Function& f, const BergerParams& params, const Quaternion& q,
                                double h) {
  const double a2 = params.alpha * params.alpha;
  return a2 * f(q) - 0.25 * left_invariant_second(f, 2, 2, q, h) - 0.25 * left_invariant_second(f, 3, 3, q, h);
}

Vec3 hopf_project(const Quaternion& q) {
  const Quaternion r = q * Quaternion{0.0, 1.0, 0.0, 0.0} * conj(q);
  return {r.x, r.y, r.z};
}

S3Function lift(S2Function f) {
  return [f = std::move(f)](const Quaternion& q) { return f(hopf_project(q)); };
}

double s_theta_derivation(const S3Function& f, const S3Function& g, const Quaternion& q, double h) {
  const double e1g = left_invariant_derivative(g, 1, q, h);
  const double e2f = left_invariant_derivative(f, 2, q, h);
  const double e3f = left_invariant_derivative(f, 3, q, h);
  const double e2g = left_invariant_derivative(g, 2, q, h);
  const double e3g = left_invariant_derivative(g, 3, q, h);
  return f(q) * e1g - 0.5 * e3f * e2g + 0.5 * e2f * e3g;
}

std::vector<Quaternion> sample_s3(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Quaternion> out;
  out.reserve(count);
  while (out.size() < count) {
    Quaternion q{normal(rng), normal(rng), normal(rng), normal(rng)};
    if (norm(q) < 1e-8) continue;
    out.push_back(normalized(q));
  }
  return out;
}

}  // namespace qqg::hopf
