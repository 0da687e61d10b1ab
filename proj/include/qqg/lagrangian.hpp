#pragma once
// Particle advection on S^2 by the Hamiltonian velocity u = p x grad f, the
// field for which u(g) = {f, g}. Potential-vorticity transport and the
// quasi-Lipschitz / Hoelder pair-separation diagnostics.

#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "qqg/sph_field.hpp"

namespace qqg::lagrangian {

using sphere::SphField;
using Vec3 = std::array<double, 3>;

/// Diameter of the unit sphere in great-circle distance.
constexpr double kDiameter = std::numbers::pi;

struct ParticleEnsemble {
  std::vector<Vec3> positions;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  double time = 0.0;
};

/// `count` uniform particles followed by 2 * pair_count particles forming
/// pairs with separations log-spaced over [min_sep, max_sep].
ParticleEnsemble seeded_ensemble(std::size_t count, std::size_t pair_count, std::uint64_t seed,
                                 double min_sep = 1e-4, double max_sep = 1.0);

/// Tangent velocity p x grad f at a unit vector (direct harmonic summation).
Vec3 velocity_at(const SphField& f, const Vec3& p);

/// Stream function as a function of time.
using StreamSource = std::function<SphField(double)>;

StreamSource frozen(SphField f);
/// Stream function of v(t) = -u(t0 - t).
StreamSource reversed(StreamSource u, double t0);

/// Samples (t, f, df/dt) with cubic Hermite interpolation between them.
class StreamHistory {
 public:
  /// keep = 0 keeps every sample; otherwise only the most recent `keep`.
  explicit StreamHistory(std::size_t keep = 0) : keep_(keep) {}

  /// Times must increase strictly.
  void push(double t, SphField f, SphField ft);
  SphField at(double t) const;
  double t_begin() const;
  double t_end() const;
  std::size_t size() const { return samples_.size(); }
  StreamSource source() const;

 private:
  struct Sample {
    double t;
    SphField f;
    SphField ft;
  };
  std::size_t keep_;
  std::deque<Sample> samples_;
};

/// One RK4 step from ensemble.time (dt may be negative); positions are
/// renormalized onto the sphere. Throws std::runtime_error on non-finite values.
void advect_step(ParticleEnsemble& e, const StreamSource& f, double dt);
/// Equal steps of size about dt from ensemble.time to t_end.
void advect(ParticleEnsemble& e, const StreamSource& f, double dt, double t_end);

double great_circle_distance(const Vec3& x, const Vec3& y);
/// Parallel transport of a tangent vector at x to y along the minimal arc.
Vec3 parallel_transport(const Vec3& v, const Vec3& x, const Vec3& y);

/// max |omega_t(eta(x)) - omega_0(x)| over particles.
double pv_transport_residual(const SphField& omega0, const SphField& omega_t,
                             const std::vector<Vec3>& initial, const std::vector<Vec3>& current);

struct HolderDiag {
  double K = 0.0;
  double R = kDiameter;
  /// Filled for a horizon T by at_horizon.
  double L = 0.0;
  double hoelder_exponent = 1.0;

  /// alpha = exp(-K T), L = e R^(1 - alpha).
  HolderDiag at_horizon(double T) const;
};

/// K = max |u(y) - P u(x)| / (rho (1 + log(R / rho))) over the pairs;
/// coincident pairs are skipped.
HolderDiag quasi_lipschitz_constant(const SphField& f, const std::vector<std::pair<Vec3, Vec3>>& pairs);

/// Pair separations at one output time.
struct PairSample {
  double time = 0.0;
  std::vector<double> rho;
};

struct HolderReport {
  bool passed = false;
  /// max over pairs and times of rho(t) / (R exp(psi bound)); must stay <= slack
  double worst_psi_ratio = 0.0;
  /// max of rho(t) / (L rho(0)^alpha)
  double worst_rho_ratio = 0.0;
  double K = 0.0;
  double L = 0.0;
  double hoelder_exponent = 1.0;
};

/// psi(t) = log(rho / R) <= psi(0) e^{-Kt} + 1 - e^{-Kt} and rho(t) <= L rho(0)^alpha
/// for every sample, with multiplicative slack on rho. history[0] is t = 0
/// relative; times are measured from it.
HolderReport holder_bound_check(const std::vector<PairSample>& history, const HolderDiag& diag,
                                double slack = 1.05);

}  // namespace qqg::lagrangian
