#include "qqg/legendre.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qqg::sphere {

GaussLegendre gauss_legendre(std::size_t n) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: n must be positive");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // P_n(x) and P_n'(x) by the three-term recurrence
  auto legendre = [n](double x, double& dp) {
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    return p1;
  };
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 1.0;
    for (int iter = 0; iter < 100; ++iter) {
      const double dx = legendre(x, dp) / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    legendre(x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

GaussLegendre gauss_legendre(std::size_t n, double a, double b) {
  GaussLegendre rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (std::size_t i = 0; i < n; ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double real_harmonic_scale(int m) { return m == 0 ? 1.0 : std::numbers::sqrt2; }

namespace {

// Recurrence coefficients depend only on (l, m); cached per band limit.
struct RecurrenceTable {
  std::vector<double> a;   // l-recurrence, triangle order
  std::vector<double> b;
  std::vector<double> lo;  // dQ/dtheta = lo * Q_{l,m-1} - hi * Q_{l,m+1}
  std::vector<double> hi;
  std::vector<double> seed;  // sqrt((2m+1)/(2m)), m >= 1
};

std::shared_ptr<const RecurrenceTable> recurrence_table(int lmax) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const RecurrenceTable>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(lmax); it != cache.end()) return it->second;
  auto t = std::make_shared<RecurrenceTable>();
  const std::size_t size = triangle_size(lmax);
  t->a.assign(size, 0.0);
  t->b.assign(size, 0.0);
  t->lo.assign(size, 0.0);
  t->hi.assign(size, 0.0);
  t->seed.assign(static_cast<std::size_t>(lmax) + 1, 0.0);
  for (int m = 0; m <= lmax; ++m) {
    if (m >= 1) t->seed[m] = std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    for (int l = m; l <= lmax; ++l) {
      const std::size_t i = triangle_index(lmax, l, m);
      if (l >= m + 2) {
        t->a[i] = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
        t->b[i] = std::sqrt((static_cast<double>(l - 1) * (l - 1) - m * m) / (4.0 * (l - 1) * (l - 1) - 1.0));
      }
      if (m == 0) {
        t->hi[i] = std::sqrt(static_cast<double>(l) * (l + 1));
      } else {
        t->lo[i] = 0.5 * std::sqrt(static_cast<double>(l + m) * (l - m + 1));
        t->hi[i] = m < l ? 0.5 * std::sqrt(static_cast<double>(l + m + 1) * (l - m)) : 0.0;
      }
    }
  }
  cache.emplace(lmax, t);
  return t;
}

}  // namespace

void evaluate_legendre(int lmax, double mu, double s, LegendreColumn& out) {
  const std::size_t size = triangle_size(lmax);
  out.q.resize(size);
  out.dq_dtheta.resize(size);
  out.q_over_sin.resize(size);
  thread_local int table_lmax = -1;
  thread_local std::shared_ptr<const RecurrenceTable> table;
  if (table_lmax != lmax) {
    table = recurrence_table(lmax);
    table_lmax = lmax;
  }
  const double* a = table->a.data();
  const double* b = table->b.data();
  double* q = out.q.data();
  double* r = out.q_over_sin.data();

  // m = 0 column directly; m >= 1 columns through R_lm = Q_lm / sin(theta),
  // which obeys the same three-term recurrence in l.
  const double q00 = 0.5 / std::sqrt(std::numbers::pi);
  double qmm = q00;  // Q_{m-1,m-1} while stepping m
  for (int m = 0; m <= lmax; ++m) {
    double seed;  // Q_mm for m = 0, R_mm for m >= 1
    if (m == 0) {
      seed = q00;
    } else {
      seed = table->seed[m] * qmm;
      qmm = seed * s;
    }
    const std::size_t base = triangle_index(lmax, m, m);
    double* col = m == 0 ? q : r;
    col[base] = seed;
    if (m + 1 <= lmax) col[base + 1] = std::sqrt(2.0 * m + 3.0) * mu * seed;
    for (int l = m + 2; l <= lmax; ++l) {
      const std::size_t i = base + static_cast<std::size_t>(l - m);
      col[i] = a[i] * (mu * col[i - 1] - b[i] * col[i - 2]);
    }
    if (m == 0) {
      r[base] = 0.0;
      for (int l = 1; l <= lmax; ++l) r[base + l] = 0.0;
    } else {
      for (int l = m; l <= lmax; ++l) q[base + (l - m)] = s * r[base + (l - m)];
    }
  }

  const double* lo = table->lo.data();
  const double* hi = table->hi.data();
  double* dq = out.dq_dtheta.data();
  for (int m = 0; m <= lmax; ++m) {
    for (int l = m; l <= lmax; ++l) {
      const std::size_t i = triangle_index(lmax, l, m);
      if (m == 0) {
        dq[i] = l >= 1 ? -hi[i] * q[triangle_index(lmax, l, 1)] : 0.0;
      } else {
        const double up = m < l ? hi[i] * q[triangle_index(lmax, l, m + 1)] : 0.0;
        dq[i] = lo[i] * q[triangle_index(lmax, l, m - 1)] - up;
      }
    }
  }
}

}  // namespace qqg::sphere
