#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace isat::stats {

struct Proportion {
  double fraction = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 1.0;
};

/// Wilson score interval at normal quantile z (default 95%).
[[nodiscard]] Proportion wilson(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

struct MeanSe {
  double mean = 0.0;
  double std_error = 0.0;
};

[[nodiscard]] MeanSe mean_se(std::span<const double> xs);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
};

/// Weighted least squares y ~ slope * x + intercept.
[[nodiscard]] LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> w);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Pearson goodness-of-fit of integer observations against a pmf on 0..K.
/// Adjacent cells are pooled until each has expected count >= 5; the upper
/// tail is folded into the last cell.
[[nodiscard]] ChiSquare chi_square_gof(std::span<const std::size_t> observed_values,
                                       std::span<const double> pmf);

/// Binomial(n, p) pmf on 0..n.
[[nodiscard]] std::vector<double> binomial_pmf(std::size_t n, double p);

}  // namespace isat::stats
