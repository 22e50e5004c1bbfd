#pragma once

#include <cstdint>
#include <vector>

#include "isat/stats.hpp"
#include "isat/uc_solver.hpp"

namespace isat::uc {

/// Starting state for drift measurement: a random formula with X variables,
/// Y2 2-clauses and Y3 3-clauses; `window` outer iterations are run on each of
/// `formulas` independent formulas.
struct DriftSpec {
  std::size_t X = 80000;
  std::size_t Y2 = 20000;
  std::size_t Y3 = 102400;
  std::size_t formulas = 100;
  std::size_t window = 100;
  double eps = 1e-3;
  std::uint64_t seed = 1;
};

struct DriftQuantity {
  double observed = 0.0;
  double std_error = 0.0;
  double predicted = 0.0;  // mean of the prediction at each iteration's own start state

  [[nodiscard]] double relative_error() const;
};

struct DriftReport {
  std::size_t iterations = 0;
  bool valid = true;  // every start state was eps-good
  DriftQuantity dX, dY2, dY3;
};

[[nodiscard]] DriftReport measure_drift(const DriftSpec& spec, int threads);

/// Red clauses created by x0 <- 1/2 in `trials` independent Phase-I
/// initializations, each on a fresh formula with X variables and Y2 2-clauses.
[[nodiscard]] std::vector<std::size_t> initial_red_counts(std::size_t X, std::size_t Y2,
                                                          std::size_t trials, std::uint64_t seed,
                                                          int threads);

struct SuccessRow {
  double c;
  std::size_t n;
  std::size_t trials;
  std::size_t successes;
  double fraction;
  double ci_lo;
  double ci_hi;
  double mean_outer;
  double mean_repairs;
  double mean_zen;
  std::size_t go_zen_violations;
};

/// Trial t at grid point g solves generate_formula(n, floor(c n), 3, s) with
/// s = split_seed(split_seed(seed, g), t) and solver seed split_seed(s, 1).
[[nodiscard]] std::vector<SuccessRow> success_curve(std::size_t n, const std::vector<double>& c_grid,
                                                    std::size_t trials, double c_prime,
                                                    std::uint64_t seed, int threads);

}  // namespace isat::uc
