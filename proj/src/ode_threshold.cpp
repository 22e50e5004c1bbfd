#include "isat/ode_threshold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace isat::ode {

double rhs(double x, double y, double c) {
  const double d = 12.0 * x - y;
  if (std::abs(x * d) < 1e-12) throw Singularity(x);
  return (-18.0 * c * x * x * x * x + 2.0 * y * d) / (x * d);
}

double dt_dx(double x, double y) { return -(12.0 * x - 13.0 * y) / (12.0 * x - y); }

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
  if (xs.empty() || x > xs.front() || x < xs.back())
    throw std::out_of_range("x outside the integrated range");
  // xs is decreasing.
  const auto it = std::lower_bound(xs.begin(), xs.end(), x, std::greater<>());
  const auto i = static_cast<std::size_t>(it - xs.begin());
  if (i == 0 || xs[i] == x) return vs[i];
  const double w = (xs[i - 1] - x) / (xs[i - 1] - xs[i]);
  return vs[i - 1] + w * (vs[i] - vs[i - 1]);
}

}  // namespace

double Solution::y_at(double xq) const { return interp(x, y, xq); }
double Solution::t_at(double xq) const { return interp(x, t, xq); }

Solution integrate(double c, double x_stop, double step) {
  if (!(x_stop > 0.0 && x_stop < 1.0)) throw std::invalid_argument("x_stop must lie in (0,1)");
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(c >= 0.0)) throw std::invalid_argument("c must be non-negative");

  Solution s;
  s.c = c;
  s.step = step;
  const auto n_steps = static_cast<std::size_t>(std::ceil((1.0 - x_stop) / step - 1e-9));
  s.x.reserve(n_steps + 1);
  s.y.reserve(n_steps + 1);
  s.t.reserve(n_steps + 1);
  s.x.push_back(1.0);
  s.y.push_back(0.0);
  s.t.push_back(0.0);

  double y = 0.0;
  bool t_valid = true;
  for (std::size_t k = 0; k < n_steps; ++k) {
    const double x0 = 1.0 - static_cast<double>(k) * step;
    const double x1 = k + 1 == n_steps ? x_stop : 1.0 - static_cast<double>(k + 1) * step;
    const double h = x1 - x0;  // negative
    if (12.0 * x0 - y < kSingularGuard) {
      s.status = Status::HitSingularity;
      s.x_end = x0;
      return s;
    }
    double y1 = 0.0;
    try {
      const double k1 = rhs(x0, y, c);
      const double k2 = rhs(x0 + h / 2.0, y + h / 2.0 * k1, c);
      const double k3 = rhs(x0 + h / 2.0, y + h / 2.0 * k2, c);
      const double k4 = rhs(x1, y + h * k3, c);
      y1 = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const Singularity&) {
      s.status = Status::HitSingularity;
      s.x_end = x0;
      return s;
    }
    if (!std::isfinite(y1) || 12.0 * x1 - y1 < kSingularGuard) {
      s.status = Status::HitSingularity;
      s.x_end = x0;
      return s;
    }
    double t1 = std::numeric_limits<double>::quiet_NaN();
    if (t_valid && 13.0 * y1 < 12.0 * x1) {
      t1 = s.t.back() + h / 2.0 * (dt_dx(x0, y) + dt_dx(x1, y1));
    } else {
      t_valid = false;
    }
    y = y1;
    s.x.push_back(x1);
    s.y.push_back(y1);
    s.t.push_back(t1);
  }
  s.x_end = x_stop;
  return s;
}

BarrierReport barrier_report(const Solution& sol) {
  BarrierReport r;
  for (std::size_t i = 0; i < sol.x.size(); ++i) {
    const double x = sol.x[i];
    if (x <= 0.8) r.max_gap_6x = std::max(r.max_gap_6x, sol.y[i] - 6.0 * x);
    if (x >= 0.8 && x < 1.0) r.max_gap_5 = std::max(r.max_gap_5, sol.y[i] - 5.0 * (1.0 - x));
  }
  return r;
}

bool threshold_predicate(double c, double eps, double step) {
  const Solution s = integrate(c, 1.0 / 3.0, step);
  if (s.status != Status::Completed) return false;
  for (std::size_t i = 0; i < s.x.size(); ++i)
    if (!(13.0 * s.y[i] < 12.0 * s.x[i] * (1.0 - 3.0 * eps))) return false;
  return true;
}

double find_threshold(double eps, double c_lo, double c_hi, double tol, double step) {
  if (!(0.0 < c_lo && c_lo < c_hi)) throw std::invalid_argument("need 0 < c_lo < c_hi");
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!threshold_predicate(c_lo, eps, step)) throw BracketError("predicate fails at c_lo");
  if (threshold_predicate(c_hi, eps, step)) throw BracketError("predicate passes at c_hi");
  while (c_hi - c_lo > tol) {
    const double mid = c_lo + (c_hi - c_lo) / 2.0;
    (threshold_predicate(mid, eps, step) ? c_lo : c_hi) = mid;
  }
  return c_lo;
}

HandoffReport handoff_check(double c, double c_prime, double step) {
  HandoffReport r{};
  r.c = c;
  r.c_prime = c_prime;
  const double third = 1.0 / 3.0;
  if (c == 0.0) {
    r.y_third = 0.0;
  } else {
    const Solution s = integrate(c, third, step);
    if (s.status != Status::Completed) {
      r.passes = false;
      return r;
    }
    r.y_third = s.y.back();
  }
  r.clause_mass = r.y_third + c * third * third * third;
  r.budget = c_prime * third;
  r.two_clause_density = r.y_third / third;
  r.residual_density = r.clause_mass / third;
  r.passes = r.clause_mass <= r.budget && r.residual_density < 1.5;
  return r;
}

double drift_f(double x, double y2) { return -(12.0 * x - y2) / (12.0 * x - 13.0 * y2); }

double drift_g2(double x, double y2, double y3) {
  const double f = drift_f(x, y2);
  return 3.0 * y3 / (2.0 * x) - (1.0 + f) * 13.0 * y3 / (8.0 * x) + f * 2.0 * y2 / x;
}

double drift_g3(double x, double y2, double y3) { return drift_f(x, y2) * 3.0 * y3 / x; }

bool eps_good(double x, double y2, double eps) {
  return x > eps && y2 / x < (1.0 - eps) * 12.0 / 13.0;
}

}  // namespace isat::ode
