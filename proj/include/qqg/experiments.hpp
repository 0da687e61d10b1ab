#pragma once
// Measurements shared by the CLI and the acceptance run: Rossby-Haurwitz phase
// speed, particle tracking alongside a solver run, and RK4 convergence order.

#include <cstddef>
#include <optional>
#include <vector>

#include "qqg/lagrangian.hpp"
#include "qqg/qg_dynamics.hpp"

namespace qqg::experiments {

struct RossbyResult {
  int l = 0;
  int m = 0;
  /// beta / (l(l+1) + alpha2), positive = eastward (increasing lambda)
  double predicted = 0.0;
  /// angular drift rate fitted to the phase of the (l, +-m) coefficients
  double measured = 0.0;
  /// | |measured| - |predicted| | / |predicted|
  double rel_error = 0.0;
  /// max |tendency - beta d f / d lambda| at t = 0 (single-wave substitution)
  double oracle_residual = 0.0;
};

/// Integrates init (a single (l, m) wave, m != 0) to p.t_end and fits the drift.
RossbyResult measure_rossby(const qg::QGState& init, const qg::QGParams& p, int l, int m);

/// Advects an ensemble in lockstep with a solver run: feed every state from
/// RunObserver::on_step. Between solver steps the stream function is the cubic
/// Hermite interpolant of (f, df/dt). Tracking stops at `horizon`.
class ParticleTracker {
 public:
  ParticleTracker(lagrangian::ParticleEnsemble ensemble, qg::QGParams params, double horizon);

  void observe(const qg::QGState& s);

  bool finished() const { return finished_; }
  const lagrangian::ParticleEnsemble& ensemble() const { return ensemble_; }
  const std::vector<lagrangian::Vec3>& initial_positions() const { return initial_; }
  /// Separation of every tracked pair after each solver step (and at start).
  const std::vector<lagrangian::PairSample>& pair_history() const { return pair_history_; }
  /// Supremum of the measured quasi-Lipschitz ratio over all observed steps.
  double K() const { return K_; }
  /// max |omega(t, eta(x)) - omega(0, x)| over the free particles (not the pairs).
  double pv_residual() const;
  /// Current pair separations.
  std::vector<double> pair_rho() const;
  lagrangian::HolderReport holder_report(double slack = 1.05) const;

 private:
  lagrangian::ParticleEnsemble ensemble_;
  qg::QGParams params_;
  double horizon_;
  bool finished_ = false;
  std::size_t free_count_;
  std::vector<lagrangian::Vec3> initial_;
  lagrangian::StreamHistory history_{2};
  std::optional<sphere::SphField> omega0_;
  std::optional<sphere::SphField> omega_last_;
  std::vector<lagrangian::PairSample> pair_history_;
  double K_ = 0.0;
};

struct ConvergenceResult {
  std::vector<double> dts;
  std::vector<double> errors;  // max coefficient error against the reference
  std::vector<double> orders;  // log2(e(dt) / e(dt/2))
  double min_order = 0.0;
};

/// Runs init over `horizon` with each dt (halving sequence) and with dt_ref.
ConvergenceResult rk4_convergence(const qg::QGState& init, qg::QGParams p, double horizon,
                                  const std::vector<double>& dts, double dt_ref);

}  // namespace qqg::experiments
