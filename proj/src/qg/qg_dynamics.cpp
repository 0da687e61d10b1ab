#include "qqg/qg_dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numbers>
#include <string>

#include "qqg/spectral.hpp"

namespace qqg::qg {

namespace sp = qqg::sphere;

void QGParams::validate() const {
  if (lmax < 1) throw std::invalid_argument("lmax must be >= 1");
  if (!(alpha2 >= 0.0) || !std::isfinite(alpha2)) throw std::invalid_argument("alpha2 must be >= 0");
  if (!std::isfinite(beta)) throw std::invalid_argument("beta must be finite");
  if (!std::isfinite(central_a)) throw std::invalid_argument("central_a must be finite");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!std::isfinite(t_end)) throw std::invalid_argument("t_end must be finite");
  if (!(hyper_nu >= 0.0)) throw std::invalid_argument("hyper_nu must be >= 0");
  if (hyper_order < 1) throw std::invalid_argument("hyper_order must be >= 1");
}

SphField potential_vorticity(const SphField& f, const QGParams& p) {
  SphField omega = sp::helmholtz_apply(f, p.alpha2);
  if (p.beta != 0.0) omega.axpy(-p.beta, sp::cos_theta_field(f.lmax()));
  return omega;
}

SphField stream_function(const SphField& omega, const QGParams& p) {
  SphField q = omega;
  if (p.beta != 0.0) q.axpy(p.beta, sp::cos_theta_field(omega.lmax()));
  // with alpha2 = 0 the mean is not determined by q and is gauged away
  if (p.alpha2 == 0.0) q(0, 0) = 0.0;
  SphField f = sp::helmholtz_invert(q, p.alpha2);
  f(0, 0) = 0.0;
  return f;
}

QGState make_state(SphField f, const QGParams& p, double time) {
  if (f.lmax() != p.lmax) f = f.resized(p.lmax);
  f(0, 0) = 0.0;
  QGState s;
  s.time = time;
  s.omega = potential_vorticity(f, p);
  s.f = std::move(f);
  s.central_a = p.central_a;
  return s;
}

QGState state_from_omega(SphField omega, const QGParams& p, double time) {
  if (omega.lmax() != p.lmax) omega = omega.resized(p.lmax);
  QGState s;
  s.time = time;
  s.f = stream_function(omega, p);
  s.omega = std::move(omega);
  s.central_a = p.central_a;
  return s;
}

namespace {

SphField bracket(const SphField& a, const SphField& b, const QGParams& p) {
  if (p.dealias) return sp::jacobian_bracket(a, b);
  return sp::jacobian_bracket(a, b, *sp::SphGrid::minimal(a.lmax()));
}

SphField tendency_of(const SphField& f, const SphField& omega, double central_a, const QGParams& p) {
  // -{f, omega} = -{f, Delta f - beta mu}: the alpha2 f and constant parts drop out
  SphField t = bracket(f, omega, p);
  t *= -1.0;
  if (central_a != 0.0) t.axpy(central_a, bracket(f, sp::cos_theta_field(f.lmax()), p));
  if (p.hyper_nu > 0.0) {
    for (int l = 1; l <= f.lmax(); ++l) {
      const double damp = p.hyper_nu * std::pow(static_cast<double>(l) * (l + 1), p.hyper_order);
      for (int m = -l; m <= l; ++m) t(l, m) -= damp * omega(l, m);
    }
  }
  return t;
}

bool all_finite(const SphField& f) {
  for (double c : f.coeffs()) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

}  // namespace

SphField tendency(const QGState& s, const QGParams& p) { return tendency_of(s.f, s.omega, s.central_a, p); }

SphField stream_tendency(const SphField& omega_t, const QGParams& p) {
  SphField q = omega_t;
  q(0, 0) = 0.0;
  SphField ft = sp::helmholtz_invert(q, p.alpha2);
  ft(0, 0) = 0.0;
  return ft;
}

QGState step_rk4(const QGState& s, const QGParams& p) { return step_rk4(s, p, p.dt); }

QGState step_rk4(const QGState& s, const QGParams& p, double dt) {
  auto stage = [&](const SphField& omega) {
    return tendency_of(stream_function(omega, p), omega, s.central_a, p);
  };
  const SphField k1 = tendency_of(s.f, s.omega, s.central_a, p);
  SphField w = s.omega;
  w.axpy(0.5 * dt, k1);
  const SphField k2 = stage(w);
  w = s.omega;
  w.axpy(0.5 * dt, k2);
  const SphField k3 = stage(w);
  w = s.omega;
  w.axpy(dt, k3);
  const SphField k4 = stage(w);

  QGState out;
  out.omega = s.omega;
  out.omega.axpy(dt / 6.0, k1);
  out.omega.axpy(dt / 3.0, k2);
  out.omega.axpy(dt / 3.0, k3);
  out.omega.axpy(dt / 6.0, k4);
  out.time = s.time + dt;
  out.central_a = s.central_a;
  if (!all_finite(out.omega)) {
    throw NumericalBlowup("non-finite potential vorticity at t = " + std::to_string(out.time), out.time);
  }
  out.f = stream_function(out.omega, p);
  return out;
}

double energy(const QGState& s, const QGParams& p) {
  double e = 0.0;
  for (int l = 1; l <= s.f.lmax(); ++l) {
    const double w = p.alpha2 + static_cast<double>(l) * (l + 1);
    double sum = 0.0;
    for (int m = -l; m <= l; ++m) sum += s.f(l, m) * s.f(l, m);
    e += w * sum;
  }
  return e;
}

std::vector<double> casimirs(const QGState& s, const std::vector<int>& ks) {
  std::vector<double> out;
  out.reserve(ks.size());
  for (int k : ks) {
    if (k < 1) throw std::invalid_argument("casimirs: k must be >= 1");
    if (k == 1) {
      out.push_back(sp::integrate(s.omega));
      continue;
    }
    const auto grid = sp::SphGrid::for_power(s.omega.lmax(), k);
    std::vector<double> v = sp::synthesize(s.omega, *grid);
    for (double& x : v) {
      double y = x;
      for (int i = 1; i < k; ++i) y *= x;
      x = y;
    }
    out.push_back(grid->integrate(v));
  }
  return out;
}

namespace {

sp::Vec3 normalize(sp::Vec3 v) {
  const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot3(const sp::Vec3& a, const sp::Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Newton iteration for a critical point of f near p in the tangent plane;
// sign = +1 for maxima, -1 for minima. Only accepts improving steps.
double refine_extremum(const SphField& f, sp::Vec3 p, double sign) {
  double best = sp::value_at(f, p);
  constexpr double h = 1e-5;
  for (int iter = 0; iter < 20; ++iter) {
    // orthonormal tangent basis at p
    const sp::Vec3 ref = std::abs(p[2]) < 0.9 ? sp::Vec3{0.0, 0.0, 1.0} : sp::Vec3{1.0, 0.0, 0.0};
    const double rp = dot3(ref, p);
    const sp::Vec3 e1 = normalize({ref[0] - rp * p[0], ref[1] - rp * p[1], ref[2] - rp * p[2]});
    const sp::Vec3 e2 = {p[1] * e1[2] - p[2] * e1[1], p[2] * e1[0] - p[0] * e1[2], p[0] * e1[1] - p[1] * e1[0]};
    const auto at = sp::evaluate_at(f, p);
    const double g1 = dot3(at.gradient, e1);
    const double g2 = dot3(at.gradient, e2);
    double hess[2][2];
    const sp::Vec3 basis[2] = {e1, e2};
    for (int b = 0; b < 2; ++b) {
      const auto& e = basis[b];
      const auto plus = sp::evaluate_at(f, normalize({p[0] + h * e[0], p[1] + h * e[1], p[2] + h * e[2]}));
      const auto minus = sp::evaluate_at(f, normalize({p[0] - h * e[0], p[1] - h * e[1], p[2] - h * e[2]}));
      for (int a = 0; a < 2; ++a) {
        hess[a][b] = (dot3(plus.gradient, basis[a]) - dot3(minus.gradient, basis[a])) / (2.0 * h);
      }
    }
    const double h12 = 0.5 * (hess[0][1] + hess[1][0]);
    const double det = hess[0][0] * hess[1][1] - h12 * h12;
    double d1;
    double d2;
    // a proper extremum has a definite Hessian of the right sign
    if (det > 0.0 && sign * hess[0][0] < 0.0) {
      d1 = -(hess[1][1] * g1 - h12 * g2) / det;
      d2 = -(-h12 * g1 + hess[0][0] * g2) / det;
    } else {
      const double gn = std::hypot(g1, g2);
      if (gn == 0.0) break;
      d1 = sign * 1e-3 * g1 / gn;
      d2 = sign * 1e-3 * g2 / gn;
    }
    const double step = std::hypot(d1, d2);
    if (step > 0.05) {
      d1 *= 0.05 / step;
      d2 *= 0.05 / step;
    }
    // halve the step until it improves
    bool improved = false;
    for (int half = 0; half < 30 && !improved; ++half, d1 *= 0.5, d2 *= 0.5) {
      const sp::Vec3 q = normalize({p[0] + d1 * e1[0] + d2 * e2[0], p[1] + d1 * e1[1] + d2 * e2[1],
                                    p[2] + d1 * e1[2] + d2 * e2[2]});
      const double v = sp::value_at(f, q);
      if (sign * (v - best) > 0.0) {
        best = v;
        p = q;
        improved = true;
      }
    }
    if (!improved || step < 1e-12) break;
  }
  return best;
}

// Grid points that are extrema of their 8 neighbours (longitude wraps) and lie
// within `margin` of the grid extreme, best first, at most `cap`.
std::vector<std::size_t> extremum_candidates(const std::vector<double>& v, const sp::SphGrid& grid, double sign,
                                             double margin, std::size_t cap) {
  const int nlat = grid.nlat();
  const int nlon = grid.nlon();
  double ext = sign * v[0];
  for (double x : v) ext = std::max(ext, sign * x);
  std::vector<std::size_t> out;
  for (int j = 0; j < nlat; ++j) {
    for (int k = 0; k < nlon; ++k) {
      const std::size_t idx = static_cast<std::size_t>(j) * nlon + k;
      const double c = sign * v[idx];
      if (c < ext - margin) continue;
      bool local = true;
      for (int dj = -1; dj <= 1 && local; ++dj) {
        const int jj = j + dj;
        if (jj < 0 || jj >= nlat) continue;
        for (int dk = -1; dk <= 1; ++dk) {
          if (dj == 0 && dk == 0) continue;
          const int kk = (k + dk + nlon) % nlon;
          if (sign * v[static_cast<std::size_t>(jj) * nlon + kk] > c) {
            local = false;
            break;
          }
        }
      }
      if (local) out.push_back(idx);
    }
  }
  std::sort(out.begin(), out.end(), [&](std::size_t a, std::size_t b) {
    return sign * v[a] > sign * v[b] || (sign * v[a] == sign * v[b] && a < b);
  });
  if (out.size() > cap) out.resize(cap);
  return out;
}

}  // namespace

std::pair<double, double> vorticity_range(const QGState& s) {
  const auto grid = sp::SphGrid::dealiased(s.omega.lmax());
  const std::vector<double> v = sp::synthesize(s.omega, *grid);
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  const double margin = 0.1 * (*hi - *lo);
  auto point = [&](std::size_t idx) {
    const int j = static_cast<int>(idx / grid->nlon());
    const int k = static_cast<int>(idx % grid->nlon());
    return sp::unit_vector(grid->mu()[j], grid->lambda(k));
  };
  // separate basins can swap order between the grid and the continuum
  double mn = *lo;
  double mx = *hi;
  for (std::size_t idx : extremum_candidates(v, *grid, -1.0, margin, 8)) {
    mn = std::min(mn, refine_extremum(s.omega, point(idx), -1.0));
  }
  for (std::size_t idx : extremum_candidates(v, *grid, 1.0, margin, 8)) {
    mx = std::max(mx, refine_extremum(s.omega, point(idx), 1.0));
  }
  return {mn, mx};
}

double max_speed(const QGState& s) {
  const auto grid = sp::SphGrid::minimal(s.f.lmax());
  const auto g = sp::synthesize_gradient(s.f, *grid);
  const auto mu = grid->mu();
  double best = 0.0;
  for (int j = 0; j < grid->nlat(); ++j) {
    const double s2 = (1.0 - mu[j]) * (1.0 + mu[j]);
    for (int k = 0; k < grid->nlon(); ++k) {
      const std::size_t i = static_cast<std::size_t>(j) * grid->nlon() + k;
      // |grad f|^2 = (1 - mu^2) f_mu^2 + f_lambda^2 / (1 - mu^2)
      const double u2 = s2 * g.dmu[i] * g.dmu[i] + g.dlambda[i] * g.dlambda[i] / s2;
      best = std::max(best, std::sqrt(u2));
    }
  }
  return best;
}

Diagnostics diagnostics(const QGState& s, const QGParams& p) {
  Diagnostics d;
  d.time = s.time;
  d.energy = energy(s, p);
  const auto c = casimirs(s, {2, 3, 4});
  d.enstrophy = c[0];
  d.casimir3 = c[1];
  d.casimir4 = c[2];
  std::tie(d.omega_min, d.omega_max) = vorticity_range(s);
  return d;
}

std::pair<long, double> step_plan(double duration, double dt) {
  if (!(duration > 0.0)) return {0, dt};
  const long n = std::max(1L, static_cast<long>(std::ceil(duration / dt - 1e-9)));
  return {n, duration / static_cast<double>(n)};
}

QGState run(const QGState& init, const QGParams& p, const RunObserver& obs) {
  p.validate();
  const auto [nsteps, dt] = step_plan(p.t_end - init.time, p.dt);
  QGState s = init;
  const double t0 = init.time;

  auto emit = [&](long step, bool last) {
    auto due = [&](int every) { return step == 0 || last || (every > 0 && step % every == 0); };
    if (obs.on_diagnostics && due(obs.diag_every)) obs.on_diagnostics(diagnostics(s, p));
    if (obs.on_snapshot && due(obs.snapshot_every)) obs.on_snapshot(s);
  };
  if (obs.on_step) obs.on_step(s);
  if (nsteps == 0) {
    emit(0, true);
    return s;
  }
  emit(0, false);

  const double limit = std::numbers::pi / (p.lmax + 1);
  const double speed = max_speed(s);
  if (dt * speed > limit) {
    std::cerr << "warning: dt * max|u| = " << dt * speed << " exceeds the grid spacing " << limit
              << "; the run may be unstable\n";
  }

  for (long n = 1; n <= nsteps; ++n) {
    s = step_rk4(s, p, dt);
    s.time = n == nsteps ? p.t_end : t0 + static_cast<double>(n) * dt;
    if (obs.on_step) obs.on_step(s);
    emit(n, n == nsteps);
  }
  return s;
}

}  // namespace qqg::qg
