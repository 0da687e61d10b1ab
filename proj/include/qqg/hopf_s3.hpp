#pragma once
// Unit quaternions as S^3, the left-invariant frame, the Hopf map to S^2 and
// the Berger contact Laplacian.
//
// Frame: E_i f(q) = d/dt f(q exp(t e_i)) with (e_1, e_2, e_3) = (i, k, j).
// This ordering makes [E_1, E_2] = -2 E_3 cyclically. E_1 generates the Hopf
// fibers of pi(q) = q i q^*.

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qqg::hopf {

using Vec3 = std::array<double, 3>;

struct Quaternion {
  double w = 1.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Quaternion&) const = default;
};

Quaternion quat_mul(const Quaternion& a, const Quaternion& b);
inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }
Quaternion conj(const Quaternion& q);
double norm(const Quaternion& q);
Quaternion normalized(const Quaternion& q);

/// Imaginary unit e_i of the frame, i in {1, 2, 3}.
Quaternion frame_unit(int i);
/// exp(t e_i) = cos t + e_i sin t.
Quaternion frame_exp(int i, double t);

struct BergerParams {
  double alpha = 1.0;  // length of E_1
  explicit BergerParams(double a) : alpha(a) {
    if (!(a > 0.0)) throw std::invalid_argument("BergerParams: alpha must be positive");
  }
};

using S3Function = std::function<double(const Quaternion&)>;
using S2Function = std::function<double(const Vec3&)>;

constexpr double kFrameStep = 1e-4;

/// E_i f(q) by central differences along the one-parameter subgroup.
double left_invariant_derivative(const S3Function& f, int i, const Quaternion& q, double h = kFrameStep);
/// E_i E_j f(q); i == j uses the three-point second difference.
double left_invariant_second(const S3Function& f, int i, int j, const Quaternion& q, double h = kFrameStep);

/// alpha^2 f - (1/4) E_2^2 f - (1/4) E_3^2 f.
double berger_contact_laplacian(const S3Function& f, const BergerParams& params, const Quaternion& q,
                                double h = kFrameStep);

/// q i q^* as a vector in R^3.
Vec3 hopf_project(const Quaternion& q);

/// f o pi.
S3Function lift(S2Function f);

/// (S_theta f) applied to g as a derivation:
/// f E_1 g - (1/2)(E_3 f)(E_2 g) + (1/2)(E_2 f)(E_3 g).
double s_theta_derivation(const S3Function& f, const S3Function& g, const Quaternion& q,
                          double h = kFrameStep);

/// Uniform points on S^3 (normalized Gaussian 4-vectors).
std::vector<Quaternion> sample_s3(std::size_t count, std::uint64_t seed);

}  // namespace qqg::hopf
