#include "qqg/experiments.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "qqg/spectral.hpp"

namespace qqg::experiments {

using sphere::SphField;

RossbyResult measure_rossby(const qg::QGState& init, const qg::QGParams& p, int l, int m) {
  if (m == 0) throw std::invalid_argument("measure_rossby: a zonal wave does not drift");
  const int am = std::abs(m);
  RossbyResult r;
  r.l = l;
  r.m = am;
  r.predicted = p.beta / (l * (l + 1.0) + p.alpha2);

  // A single wave is an exact travelling solution: omega_t = beta f_lambda.
  SphField oracle = sphere::dlambda(init.f);
  oracle *= p.beta;
  r.oracle_residual = sphere::max_abs_diff(qg::tendency(init, p), oracle);

  // f ~ cos(m (lambda - c t)): the phase atan2(f_{l,-m}, f_{l,m}) advances as m c t
  std::vector<double> times;
  std::vector<double> shifts;
  double last = 0.0;
  double unwrap = 0.0;
  bool first = true;
  qg::RunObserver obs;
  obs.on_step = [&](const qg::QGState& s) {
    double ph = std::atan2(s.f(l, -am), s.f(l, am));
    if (!first) {
      while (ph + unwrap - last > std::numbers::pi) unwrap -= 2.0 * std::numbers::pi;
      while (ph + unwrap - last < -std::numbers::pi) unwrap += 2.0 * std::numbers::pi;
    }
    first = false;
    last = ph + unwrap;
    times.push_back(s.time);
    shifts.push_back(last / am);
  };
  qg::run(init, p, obs);

  // least-squares slope of shift against time
  const double n = static_cast<double>(times.size());
  double st = 0.0, ss = 0.0, stt = 0.0, sts = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    st += times[i];
    ss += shifts[i];
    stt += times[i] * times[i];
    sts += times[i] * shifts[i];
  }
  const double denom = n * stt - st * st;
  if (!(denom > 0.0)) throw std::invalid_argument("measure_rossby: need t_end > initial time");
  r.measured = (n * sts - st * ss) / denom;
  r.rel_error = std::abs(std::abs(r.measured) - std::abs(r.predicted)) / std::abs(r.predicted);
  return r;
}

ParticleTracker::ParticleTracker(lagrangian::ParticleEnsemble ensemble, qg::QGParams params, double horizon)
    : ensemble_(std::move(ensemble)), params_(std::move(params)), horizon_(horizon) {
  free_count_ = ensemble_.positions.size() - 2 * ensemble_.pairs.size();
  initial_ = ensemble_.positions;
}

std::vector<double> ParticleTracker::pair_rho() const {
  std::vector<double> rho;
  rho.reserve(ensemble_.pairs.size());
  for (const auto& [a, b] : ensemble_.pairs) {
    rho.push_back(lagrangian::great_circle_distance(ensemble_.positions[a], ensemble_.positions[b]));
  }
  return rho;
}

void ParticleTracker::observe(const qg::QGState& s) {
  if (finished_) return;
  const SphField ft = qg::stream_tendency(qg::tendency(s, params_), params_);
  const bool start = history_.size() == 0;
  history_.push(s.time, s.f, ft);
  if (start) {
    ensemble_.time = s.time;
    omega0_ = s.omega;
  } else {
    lagrangian::advect_step(ensemble_, history_.source(), s.time - ensemble_.time);
    ensemble_.time = s.time;
  }
  omega_last_ = s.omega;

  std::vector<std::pair<lagrangian::Vec3, lagrangian::Vec3>> pts;
  for (const auto& [a, b] : ensemble_.pairs) pts.emplace_back(ensemble_.positions[a], ensemble_.positions[b]);
  const double k = lagrangian::quasi_lipschitz_constant(s.f, pts).K;
  if (!(k <= K_)) K_ = k;
  pair_history_.push_back({s.time, pair_rho()});
  if (s.time >= horizon_ - 1e-12 * std::max(1.0, std::abs(horizon_))) finished_ = true;
}

double ParticleTracker::pv_residual() const {
  if (!omega0_) return 0.0;
  std::vector<lagrangian::Vec3> x0(initial_.begin(), initial_.begin() + static_cast<std::ptrdiff_t>(free_count_));
  std::vector<lagrangian::Vec3> xt(ensemble_.positions.begin(),
                                     ensemble_.positions.begin() + static_cast<std::ptrdiff_t>(free_count_));
  return lagrangian::pv_transport_residual(*omega0_, *omega_last_, x0, xt);
}

lagrangian::HolderReport ParticleTracker::holder_report(double slack) const {
  lagrangian::HolderDiag d;
  d.K = K_;
  return lagrangian::holder_bound_check(pair_history_, d, slack);
}

ConvergenceResult rk4_convergence(const qg::QGState& init, qg::QGParams p, double horizon,
                                  const std::vector<double>& dts, double dt_ref) {
  auto solve = [&](double dt) {
    qg::QGParams q = p;
    q.dt = dt;
    q.t_end = init.time + horizon;
    return qg::run(init, q).omega;
  };
  const SphField ref = solve(dt_ref);
  ConvergenceResult r;
  r.dts = dts;
  for (double dt : dts) r.errors.push_back(sphere::max_abs_diff(solve(dt), ref));
  r.min_order = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < dts.size(); ++i) {
    const double o = std::log(r.errors[i] / r.errors[i + 1]) / std::log(dts[i] / dts[i + 1]);
    r.orders.push_back(o);
    if (!(o >= r.min_order)) r.min_order = o;
  }
  return r;
}

}  // namespace qqg::experiments
