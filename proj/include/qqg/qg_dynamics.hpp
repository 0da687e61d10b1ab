#pragma once
// Quasigeostrophic potential-vorticity dynamics on S^2:
//   omega = Delta f - alpha2 f - beta cos(theta),   omega_t = -{f, omega} + a {f, cos(theta)}
// with a the central-extension charge. Explicit RK4 on omega; f recovered by
// Helmholtz inversion in the mean-zero gauge.

#include <array>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qqg/sph_field.hpp"

namespace qqg::qg {

using sphere::SphField;

struct QGParams {
  int lmax = 42;
  double alpha2 = 1.0;
  double beta = 0.0;
  double central_a = 0.0;
  double dt = 1e-3;
  double t_end = 0.0;
  bool dealias = true;
  /// -hyper_nu (l(l+1))^hyper_order omega; off unless hyper_nu > 0.
  double hyper_nu = 0.0;
  int hyper_order = 2;

  /// Throws std::invalid_argument naming the violated condition.
  void validate() const;
};

struct QGState {
  double time = 0.0;
  SphField omega;
  SphField f;
  double central_a = 0.0;
};

/// Non-finite value during integration.
struct NumericalBlowup : std::runtime_error {
  double time;
  NumericalBlowup(const std::string& what, double t) : std::runtime_error(what), time(t) {}
};

SphField potential_vorticity(const SphField& f, const QGParams& p);
/// Inverse of potential_vorticity in the mean-zero gauge.
SphField stream_function(const SphField& omega, const QGParams& p);

/// State from a stream function; the mean of f is removed first.
QGState make_state(SphField f, const QGParams& p, double time = 0.0);
QGState state_from_omega(SphField omega, const QGParams& p, double time = 0.0);

/// d omega / dt at the state's stream function.
SphField tendency(const QGState& s, const QGParams& p);
/// (Delta - alpha2)^-1 applied to an omega tendency: df/dt.
SphField stream_tendency(const SphField& omega_t, const QGParams& p);

/// One RK4 step of size p.dt, or of signed size dt (negative runs backward).
QGState step_rk4(const QGState& s, const QGParams& p);
QGState step_rk4(const QGState& s, const QGParams& p, double dt);

/// sum_{l >= 1} (alpha2 + l(l+1)) f_lm^2.
double energy(const QGState& s, const QGParams& p);
/// int omega^k over the sphere for each k, on a grid exact for degree k lmax.
std::vector<double> casimirs(const QGState& s, const std::vector<int>& ks);
/// Extrema of omega: grid search on the alias-free grid, then Newton
/// refinement with point evaluation.
std::pair<double, double> vorticity_range(const QGState& s);

/// Largest |u| = |grad f| on the transform grid.
double max_speed(const QGState& s);

struct Diagnostics {
  double time = 0.0;
  double energy = 0.0;
  double enstrophy = 0.0;
  double casimir3 = 0.0;
  double casimir4 = 0.0;
  double omega_min = 0.0;
  double omega_max = 0.0;
};
Diagnostics diagnostics(const QGState& s, const QGParams& p);

/// Consumers for run(). Cadences are in steps; 0 means first and last only.
struct RunObserver {
  int diag_every = 0;
  int snapshot_every = 0;
  std::function<void(const Diagnostics&)> on_diagnostics;
  std::function<void(const QGState&)> on_snapshot;
  /// Called with the initial state and after every step.
  std::function<void(const QGState&)> on_step;
};

/// Number of steps and the step actually used to cover `duration` exactly:
/// ceil(duration / dt) steps of equal size.
std::pair<long, double> step_plan(double duration, double dt);

/// Integrates from init.time to the absolute time p.t_end (no-op when already
/// there). Warns on stderr when dt exceeds the advective limit. Throws
/// NumericalBlowup after the observer has seen everything up to the failure.
QGState run(const QGState& init, const QGParams& p, const RunObserver& obs = {});

}  // namespace qqg::qg
