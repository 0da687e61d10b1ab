#include "qqg/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "qqg/parallel.hpp"
#include "qqg/qg_dynamics.hpp"
#include "qqg/spectral.hpp"

namespace qqg::lagrangian {

namespace {

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double length(const Vec3& a) { return std::sqrt(dot(a, a)); }
Vec3 scaled(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
Vec3 plus(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 unit(const Vec3& a) { return scaled(a, 1.0 / length(a)); }

}  // namespace

ParticleEnsemble seeded_ensemble(std::size_t count, std::size_t pair_count, std::uint64_t seed,
                                 double min_sep, double max_sep) {
  if (!(min_sep > 0.0) || !(max_sep >= min_sep) || max_sep >= kDiameter) {
    throw std::invalid_argument("seeded_ensemble: need 0 < min_sep <= max_sep < pi");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto random_unit = [&] {
    for (;;) {
      Vec3 v{normal(rng), normal(rng), normal(rng)};
      if (length(v) > 1e-8) return unit(v);
    }
  };
  ParticleEnsemble e;
  for (std::size_t i = 0; i < count; ++i) e.positions.push_back(random_unit());
  for (std::size_t i = 0; i < pair_count; ++i) {
    const double frac = pair_count > 1 ? static_cast<double>(i) / static_cast<double>(pair_count - 1) : 0.0;
    const double rho = min_sep * std::pow(max_sep / min_sep, frac);
    const Vec3 x = random_unit();
    Vec3 d = random_unit();
    d = unit(plus(d, scaled(x, -dot(d, x))));  // tangent direction at x
    const Vec3 y = unit(plus(scaled(x, std::cos(rho)), scaled(d, std::sin(rho))));
    e.pairs.emplace_back(e.positions.size(), e.positions.size() + 1);
    e.positions.push_back(x);
    e.positions.push_back(y);
  }
  return e;
}

Vec3 velocity_at(const SphField& f, const Vec3& p) {
  const auto pv = sphere::evaluate_at(f, p);
  return cross(unit(p), pv.gradient);
}

StreamSource frozen(SphField f) {
  return [f = std::move(f)](double) { return f; };
}

StreamSource reversed(StreamSource u, double t0) {
  return [u = std::move(u), t0](double t) {
    SphField f = u(t0 - t);
    f *= -1.0;
    return f;
  };
}

void StreamHistory::push(double t, SphField f, SphField ft) {
  if (!samples_.empty() && !(t > samples_.back().t)) {
    throw std::invalid_argument("StreamHistory::push: times must increase");
  }
  samples_.push_back({t, std::move(f), std::move(ft)});
  if (keep_ > 0 && samples_.size() > keep_) samples_.pop_front();
}

double StreamHistory::t_begin() const {
  if (samples_.empty()) throw std::logic_error("StreamHistory is empty");
  return samples_.front().t;
}

double StreamHistory::t_end() const {
  if (samples_.empty()) throw std::logic_error("StreamHistory is empty");
  return samples_.back().t;
}

SphField StreamHistory::at(double t) const {
  if (samples_.empty()) throw std::logic_error("StreamHistory is empty");
  const double span = std::max(1.0, std::abs(samples_.back().t));
  if (t < samples_.front().t - 1e-12 * span || t > samples_.back().t + 1e-12 * span) {
    throw std::out_of_range("StreamHistory::at: t = " + std::to_string(t) + " outside [" +
                            std::to_string(samples_.front().t) + ", " + std::to_string(samples_.back().t) + "]");
  }
  if (samples_.size() == 1) return samples_.front().f;
  auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const Sample& s) { return v < s.t; });
  if (it == samples_.begin()) ++it;
  if (it == samples_.end()) --it;
  const Sample& b = *it;
  const Sample& a = *(it - 1);
  if (t == a.t) return a.f;
  if (t == b.t) return b.f;
  const double h = b.t - a.t;
  const double s = (t - a.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  SphField out = a.f;
  out *= 2.0 * s3 - 3.0 * s2 + 1.0;
  out.axpy(h * (s3 - 2.0 * s2 + s), a.ft);
  out.axpy(-2.0 * s3 + 3.0 * s2, b.f);
  out.axpy(h * (s3 - s2), b.ft);
  return out;
}

StreamSource StreamHistory::source() const {
  return [this](double t) { return at(t); };
}

void advect_step(ParticleEnsemble& e, const StreamSource& source, double dt) {
  const double t = e.time;
  const SphField f0 = source(t);
  const SphField fh = source(t + 0.5 * dt);
  const SphField f1 = source(t + dt);
  std::vector<Vec3>& pos = e.positions;
  bool finite = true;
  // U(x) = u(x / |x|) extends the field off the sphere for the R^3 stages
  parallel_for(pos.size(), [&](std::size_t i) {
    const Vec3 x = pos[i];
    const Vec3 k1 = velocity_at(f0, x);
    const Vec3 k2 = velocity_at(fh, plus(x, scaled(k1, 0.5 * dt)));
    const Vec3 k3 = velocity_at(fh, plus(x, scaled(k2, 0.5 * dt)));
    const Vec3 k4 = velocity_at(f1, plus(x, scaled(k3, dt)));
    Vec3 y = x;
    for (int c = 0; c < 3; ++c) y[c] += dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
    pos[i] = unit(y);
  });
  for (const auto& p : pos) {
    if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2])) finite = false;
  }
  if (!finite) throw std::runtime_error("advect_step: non-finite particle position at t = " + std::to_string(t));
  e.time = t + dt;
}

void advect(ParticleEnsemble& e, const StreamSource& source, double dt, double t_end) {
  const double t0 = e.time;
  const auto [n, h] = qg::step_plan(std::abs(t_end - t0), std::abs(dt));
  const double step = t_end >= t0 ? h : -h;
  for (long i = 1; i <= n; ++i) {
    advect_step(e, source, step);
    e.time = i == n ? t_end : t0 + static_cast<double>(i) * step;
  }
}

double great_circle_distance(const Vec3& x, const Vec3& y) {
  // atan2 form stays accurate for nearly coincident and nearly antipodal points
  return std::atan2(length(cross(x, y)), dot(x, y));
}

Vec3 parallel_transport(const Vec3& v, const Vec3& x, const Vec3& y) {
  const Vec3 axis = cross(x, y);
  const double s = length(axis);
  if (s == 0.0) return v;
  const Vec3 n = scaled(axis, 1.0 / s);
  const double c = dot(x, y);
  // Rodrigues rotation taking x to y about n
  const Vec3 nv = cross(n, v);
  const double nd = dot(n, v);
  return {v[0] * c + nv[0] * s + n[0] * nd * (1.0 - c), v[1] * c + nv[1] * s + n[1] * nd * (1.0 - c),
          v[2] * c + nv[2] * s + n[2] * nd * (1.0 - c)};
}

double pv_transport_residual(const SphField& omega0, const SphField& omega_t, const std::vector<Vec3>& initial,
                             const std::vector<Vec3>& current) {
  if (initial.size() != current.size()) throw std::invalid_argument("pv_transport_residual: size mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < initial.size(); ++i) {
    const double r = std::abs(sphere::value_at(omega_t, current[i]) - sphere::value_at(omega0, initial[i]));
    if (!(r <= worst)) worst = r;
  }
  return worst;
}

HolderDiag HolderDiag::at_horizon(double T) const {
  HolderDiag d = *this;
  d.hoelder_exponent = std::exp(-K * T);
  d.L = std::exp(1.0) * std::pow(R, 1.0 - d.hoelder_exponent);
  return d;
}

HolderDiag quasi_lipschitz_constant(const SphField& f, const std::vector<std::pair<Vec3, Vec3>>& pairs) {
  HolderDiag d;
  for (const auto& [x, y] : pairs) {
    const double rho = great_circle_distance(x, y);
    if (!(rho > 0.0)) continue;
    const Vec3 ux = velocity_at(f, x);
    const Vec3 uy = velocity_at(f, y);
    const Vec3 pu = parallel_transport(ux, x, y);
    const double diff = length(plus(uy, scaled(pu, -1.0)));
    const double k = diff / (rho * (1.0 + std::log(d.R / rho)));
    if (!(k <= d.K)) d.K = k;
  }
  return d;
}

HolderReport holder_bound_check(const std::vector<PairSample>& history, const HolderDiag& diag, double slack) {
  HolderReport rep;
  if (history.empty()) return rep;
  const double t0 = history.front().time;
  const double T = history.back().time - t0;
  const HolderDiag h = diag.at_horizon(T);
  rep.K = h.K;
  rep.L = h.L;
  rep.hoelder_exponent = h.hoelder_exponent;
  const auto& rho0 = history.front().rho;
  for (const auto& sample : history) {
    if (sample.rho.size() != rho0.size()) throw std::invalid_argument("holder_bound_check: pair count changed");
    const HolderDiag ht = diag.at_horizon(sample.time - t0);
    const double decay = ht.hoelder_exponent;
    for (std::size_t i = 0; i < rho0.size(); ++i) {
      if (!(rho0[i] > 0.0)) continue;
      const double psi0 = std::log(rho0[i] / h.R);
      const double bound = h.R * std::exp(psi0 * decay + 1.0 - decay);
      const double a = sample.rho[i] / bound;
      const double b = sample.rho[i] / (ht.L * std::pow(rho0[i], ht.hoelder_exponent));
      if (!(a <= rep.worst_psi_ratio)) rep.worst_psi_ratio = a;
      if (!(b <= rep.worst_rho_ratio)) rep.worst_rho_ratio = b;
    }
  }
  rep.passed = rep.worst_psi_ratio <= slack && rep.worst_rho_ratio <= slack;
  return rep;
}

}  // namespace qqg::lagrangian
