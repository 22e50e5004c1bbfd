#include "isat/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

namespace isat::stats {

Proportion wilson(std::size_t successes, std::size_t trials, double z) {
  if (trials == 0) return {0.0, 0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  const double lo = successes == 0 ? 0.0 : std::max(0.0, centre - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, centre + half);
  return {p, lo, hi};
}

MeanSe mean_se(std::span<const double> xs) {
  MeanSe r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return r;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y,
                   std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size() || x.size() < 2)
    throw std::invalid_argument("fit_line needs >= 2 matching points");
  double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sw += w[i];
    sx += w[i] * x[i];
    sy += w[i] * y[i];
    sxx += w[i] * x[i] * x[i];
    sxy += w[i] * x[i] * y[i];
  }
  const double det = sw * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");
  LinearFit f;
  f.slope = (sw * sxy - sx * sy) / det;
  f.intercept = (sy - f.slope * sx) / sw;
  return f;
}

std::vector<double> binomial_pmf(std::size_t n, double p) {
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
  std::vector<double> pmf(n + 1);
  for (std::size_t k = 0; k <= n; ++k) pmf[k] = boost::math::pdf(dist, static_cast<double>(k));
  return pmf;
}

ChiSquare chi_square_gof(std::span<const std::size_t> observed_values, std::span<const double> pmf) {
  if (pmf.empty()) throw std::invalid_argument("empty pmf");
  const double total = static_cast<double>(observed_values.size());
  std::vector<double> obs(pmf.size(), 0.0);
  for (auto v : observed_values) obs[std::min(v, pmf.size() - 1)] += 1.0;
  std::vector<double> expect(pmf.size());
  double tail = 1.0;
  for (std::size_t k = 0; k + 1 < pmf.size(); ++k) {
    expect[k] = pmf[k] * total;
    tail -= pmf[k];
  }
  expect.back() = std::max(0.0, tail) * total;

  // Pool left to right, then merge an underfull last cell into its neighbour.
  std::vector<double> po, pe;
  double acc_o = 0.0, acc_e = 0.0;
  for (std::size_t k = 0; k < pmf.size(); ++k) {
    acc_o += obs[k];
    acc_e += expect[k];
    if (acc_e >= 5.0) {
      po.push_back(acc_o);
      pe.push_back(acc_e);
      acc_o = acc_e = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (pe.empty()) {
      po.push_back(acc_o);
      pe.push_back(acc_e);
    } else {
      po.back() += acc_o;
      pe.back() += acc_e;
    }
  }

  ChiSquare r;
  for (std::size_t i = 0; i < po.size(); ++i)
    if (pe[i] > 0.0) r.statistic += (po[i] - pe[i]) * (po[i] - pe[i]) / pe[i];
  r.dof = po.size() > 1 ? po.size() - 1 : 0;
  if (r.dof > 0) {
    boost::math::chi_squared_distribution<double> dist(static_cast<double>(r.dof));
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  }
  return r;
}

}  // namespace isat::stats
