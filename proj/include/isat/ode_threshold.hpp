#pragma once

#include <stdexcept>
#include <vector>

namespace isat::ode {

/// Thrown when the right-hand side is evaluated on the singular line.
class Singularity : public std::runtime_error {
 public:
  explicit Singularity(double x)
      : std::runtime_error("singular right-hand side at x = " + std::to_string(x)), x(x) {}
  double x;
};

/// dy/dx = (-18 c x^4 + 2 y (12x - y)) / (x (12x - y)).
/// Throws Singularity when |x (12x - y)| < 1e-12.
[[nodiscard]] double rhs(double x, double y, double c);

/// dt/dx along the trajectory: -(12x - 13y) / (12x - y).
[[nodiscard]] double dt_dx(double x, double y);

/// Integration stops when 12x - y falls below this guard.
inline constexpr double kSingularGuard = 1e-6;
inline constexpr double kDefaultStep = 1e-5;

enum class Status { Completed, HitSingularity };

struct Solution {
  double c = 0.0;
  double step = 0.0;
  Status status = Status::Completed;
  double x_end = 1.0;           // x_stop, or where the guard fired
  std::vector<double> x;        // 1 = x[0] > x[1] > ... = x_end
  std::vector<double> y;
  std::vector<double> t;        // NaN once 13y >= 12x has been reached

  [[nodiscard]] double y3(std::size_t i) const { return c * x[i] * x[i] * x[i]; }
  /// Linear interpolation of y at x in [x_end, 1].
  [[nodiscard]] double y_at(double x) const;
  [[nodiscard]] double t_at(double x) const;
};

/// Classical RK4 from (x, y) = (1, 0) down to x_stop with fixed step (the last
/// step is shortened to land on x_stop). t is the trapezoidal integral of dt_dx.
[[nodiscard]] Solution integrate(double c, double x_stop, double step = kDefaultStep);

/// Sup over the grid of the two barrier gaps: max(y - 6x) on (0, 4/5] and
/// max(y - 5(1-x)) on [4/5, 1). Both must be negative.
struct BarrierReport {
  double max_gap_6x = -1e300;
  double max_gap_5 = -1e300;
  [[nodiscard]] bool holds() const noexcept { return max_gap_6x < 0.0 && max_gap_5 < 0.0; }
};
[[nodiscard]] BarrierReport barrier_report(const Solution& sol);

/// Integration to 1/3 completes with 13 y < 12 x (1 - 3 eps) at every grid point.
[[nodiscard]] bool threshold_predicate(double c, double eps, double step = kDefaultStep);

class BracketError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Bisection for the largest c passing threshold_predicate, to within tol.
[[nodiscard]] double find_threshold(double eps, double c_lo, double c_hi, double tol,
                                    double step = kDefaultStep);

struct HandoffReport {
  double c;
  double c_prime;
  double y_third;            // y(1/3)
  double clause_mass;        // y(1/3) + c/27
  double budget;             // c' / 3
  double two_clause_density; // y(1/3) / (1/3)
  double residual_density;   // (y(1/3) + c/27) / (1/3): 2-clauses per unused variable after the drop
  bool passes;
};
[[nodiscard]] HandoffReport handoff_check(double c, double c_prime, double step = kDefaultStep);

// Expected one-step changes of (X, Y2, Y3) per outer iteration. All three are
// homogeneous of degree 0, so raw counts and scaled densities give the same value.
[[nodiscard]] double drift_f(double x, double y2);
[[nodiscard]] double drift_g2(double x, double y2, double y3);
[[nodiscard]] double drift_g3(double x, double y2, double y3);

/// x > eps and y2/x < (1 - eps) 12/13.
[[nodiscard]] bool eps_good(double x, double y2, double eps);

}  // namespace isat::ode
