#include "isat/experiments.hpp"

#include <cmath>

#include "isat/ode_threshold.hpp"
#include "isat/parallel.hpp"

namespace isat::uc {

double DriftQuantity::relative_error() const {
  return std::abs(observed - predicted) / std::abs(predicted);
}

namespace {

struct DriftSample {
  double dx, dy2, dy3;
  double fx, fy2, fy3;
  bool good;
};

}  // namespace

DriftReport measure_drift(const DriftSpec& spec, int threads) {
  const auto per_formula = map_indexed(spec.formulas, threads, [&](std::size_t i) {
    const std::uint64_t s = split_seed(spec.seed, i);
    const Formula f = generate_mixed_formula(spec.X, spec.Y2, spec.Y3, s);
    SolverOptions opt;
    opt.record_iterations = true;
    UcSolver solver(f, split_seed(s, 1), opt);
    for (std::size_t w = 0; w < spec.window && solver.X() > 0; ++w) solver.outer_step();
    std::vector<DriftSample> out;
    const double n = static_cast<double>(spec.X);
    for (const auto& r : solver.stats().iterations) {
      const double x = static_cast<double>(r.X), y2 = static_cast<double>(r.Y2),
                   y3 = static_cast<double>(r.Y3);
      out.push_back({static_cast<double>(r.dX), static_cast<double>(r.dY2), static_cast<double>(r.dY3),
                     ode::drift_f(x, y2), ode::drift_g2(x, y2, y3), ode::drift_g3(x, y2, y3),
                     ode::eps_good(x / n, y2 / n, spec.eps)});
    }
    return out;
  });

  std::vector<double> dx, dy2, dy3;
  double fx = 0, fy2 = 0, fy3 = 0;
  DriftReport r;
  for (const auto& samples : per_formula)
    for (const auto& s : samples) {
      dx.push_back(s.dx);
      dy2.push_back(s.dy2);
      dy3.push_back(s.dy3);
      fx += s.fx;
      fy2 += s.fy2;
      fy3 += s.fy3;
      r.valid = r.valid && s.good;
    }
  r.iterations = dx.size();
  if (r.iterations == 0) {
    r.valid = false;
    return r;
  }
  const double k = static_cast<double>(r.iterations);
  auto fill = [&](DriftQuantity& q, const std::vector<double>& xs, double pred_sum) {
    const auto ms = stats::mean_se(xs);
    q.observed = ms.mean;
    q.std_error = ms.std_error;
    q.predicted = pred_sum / k;
  };
  fill(r.dX, dx, fx);
  fill(r.dY2, dy2, fy2);
  fill(r.dY3, dy3, fy3);
  return r;
}

std::vector<std::size_t> initial_red_counts(std::size_t X, std::size_t Y2, std::size_t trials,
                                            std::uint64_t seed, int threads) {
  return map_indexed(trials, threads, [&](std::size_t t) {
    const std::uint64_t s = split_seed(seed, t);
    const Formula f = generate_mixed_formula(X, Y2, 0, s);
    UcSolver solver(f, split_seed(s, 1));
    return solver.outer_step().initial_red;
  });
}

std::vector<SuccessRow> success_curve(std::size_t n, const std::vector<double>& c_grid,
                                      std::size_t trials, double c_prime, std::uint64_t seed,
                                      int threads) {
  struct Trial {
    bool sat;
    std::size_t outer, repairs, zen, violations;
  };
  std::vector<SuccessRow> rows;
  for (std::size_t g = 0; g < c_grid.size(); ++g) {
    const double c = c_grid[g];
    const auto m = static_cast<std::size_t>(std::floor(c * static_cast<double>(n)));
    const std::uint64_t grid_seed = split_seed(seed, g);
    const auto trials_out = map_indexed(trials, threads, [&](std::size_t t) {
      const std::uint64_t s = split_seed(grid_seed, t);
      SolverOptions opt;
      opt.c_prime = c_prime;
      const SolveResult res = solve(generate_formula(n, m, 3, s), split_seed(s, 1), opt);
      return Trial{res.outcome == Outcome::Sat, res.stats.outer_iterations, res.stats.repairs,
                   res.stats.zen_runs, res.stats.go_zen_violations};
    });
    SuccessRow row{};
    row.c = c;
    row.n = n;
    row.trials = trials;
    double outer = 0, repairs = 0, zen = 0;
    for (const auto& t : trials_out) {
      row.successes += t.sat ? 1 : 0;
      outer += static_cast<double>(t.outer);
      repairs += static_cast<double>(t.repairs);
      zen += static_cast<double>(t.zen);
      row.go_zen_violations += t.violations;
    }
    const auto w = stats::wilson(row.successes, trials);
    row.fraction = w.fraction;
    row.ci_lo = w.ci_lo;
    row.ci_hi = w.ci_hi;
    const double tt = trials ? static_cast<double>(trials) : 1.0;
    row.mean_outer = outer / tt;
    row.mean_repairs = repairs / tt;
    row.mean_zen = zen / tt;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace isat::uc
