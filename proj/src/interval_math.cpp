#include "isat/interval_math.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "isat/formula_io.hpp"
#include "isat/parallel.hpp"

namespace isat {

Interval sample_interval(Rng& rng) {
  const double u = uniform01(rng);
  const double v = uniform01(rng);
  Interval iv;
  iv.lo = std::min(u, v);
  iv.hi = std::max(u, v);
  return iv;
}

double cdf_barx(double t) noexcept {
  if (t < 0.0) return 0.0;
  if (t < 0.5) return t * t;
  if (t < 1.0) return 1.0 - (1.0 - t) * (1.0 - t);
  return 1.0;
}

double sample_P(Rng& rng) { return p_of(sample_interval(rng)); }

namespace {

double draw(const ProbeSpec& spec, Rng& rng) {
  switch (spec.quantity) {
    case Quantity::ContainsPoint:
      return sample_interval(rng).contains(spec.point) ? 1.0 : 0.0;
    case Quantity::PMean:
      return sample_P(rng);
    case Quantity::PSecondMoment: {
      const double p = sample_P(rng);
      return p * p;
    }
    case Quantity::BarxInOther: {
      const Interval i = sample_interval(rng);
      const Interval j = sample_interval(rng);
      return j.contains(bar_x(i)) ? 1.0 : 0.0;
    }
    case Quantity::Disjoint: {
      const Interval i = sample_interval(rng);
      const Interval j = sample_interval(rng);
      return i.disjoint(j) ? 1.0 : 0.0;
    }
    case Quantity::BarxQuartic: {
      const double x = bar_x(sample_interval(rng));
      const double q = x * (1.0 - x);
      return q * q;
    }
  }
  return 0.0;
}

struct BlockSums {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
};

BlockSums run_block(const ProbeSpec& spec, std::uint64_t block, std::uint64_t samples,
                    std::uint64_t seed) {
  const std::uint64_t begin = block * kMcBlockSize;
  const std::uint64_t count = std::min(kMcBlockSize, samples - begin);
  Rng rng = make_rng(seed, block);
  BlockSums s;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double v = draw(spec, rng);
    s.sum += v;
    s.sum_sq += v * v;
  }
  s.count = count;
  return s;
}

Estimate combine(const std::vector<BlockSums>& blocks) {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t count = 0;
  for (const auto& b : blocks) {
    sum += b.sum;
    sum_sq += b.sum_sq;
    count += b.count;
  }
  Estimate e;
  e.samples = count;
  if (count == 0) return e;
  e.mean = sum / static_cast<double>(count);
  if (count > 1) {
    const double var = std::max(0.0, (sum_sq - sum * e.mean) / static_cast<double>(count - 1));
    e.std_error = std::sqrt(var / static_cast<double>(count));
  }
  return e;
}

std::uint64_t num_blocks(std::uint64_t samples) {
  return (samples + kMcBlockSize - 1) / kMcBlockSize;
}

}  // namespace

Estimate estimate_serial(const ProbeSpec& spec, std::uint64_t samples, std::uint64_t seed) {
  return combine(map_indexed_serial(num_blocks(samples), [&](std::size_t b) {
    return run_block(spec, b, samples, seed);
  }));
}

Estimate estimate_parallel(const ProbeSpec& spec, std::uint64_t samples, std::uint64_t seed,
                           int threads) {
  return combine(map_indexed(num_blocks(samples), threads, [&](std::size_t b) {
    return run_block(spec, b, samples, seed);
  }));
}

double closed_form(const ProbeSpec& spec) {
  switch (spec.quantity) {
    case Quantity::ContainsPoint:
      return prob_contains(spec.point);
    case Quantity::PMean:
      return p_moments().mean;
    case Quantity::PSecondMoment:
      return p_moments().second_moment;
    case Quantity::BarxInOther:
      return prob_barx_in_other();
    case Quantity::Disjoint:
      return prob_disjoint();
    case Quantity::BarxQuartic:
      return barx_quartic_moment();
  }
  throw std::invalid_argument("unknown quantity");
}

std::string describe(const ProbeSpec& spec) {
  switch (spec.quantity) {
    case Quantity::ContainsPoint:
      return "pr_contains_" + format_double(spec.point);
    case Quantity::PMean:
      return "mean_P";
    case Quantity::PSecondMoment:
      return "second_moment_P";
    case Quantity::BarxInOther:
      return "pr_barx_in_other";
    case Quantity::Disjoint:
      return "pr_disjoint";
    case Quantity::BarxQuartic:
      return "mean_barx_quartic";
  }
  return "unknown";
}

double barx_cdf_sup_distance(std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) return 0.0;
  std::vector<double> xs(samples);
  Rng rng = make_rng(seed, 0);
  for (auto& x : xs) x = bar_x(sample_interval(rng));
  std::sort(xs.begin(), xs.end());

  // Kolmogorov distance against a CDF with an atom: compare at each distinct
  // sample value both the left limit and the value itself.
  const double total = static_cast<double>(samples);
  double sup = 0.0;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t j = i;
    while (j < xs.size() && xs[j] == xs[i]) ++j;
    const double t = xs[i];
    const double emp_left = static_cast<double>(i) / total;
    const double emp_right = static_cast<double>(j) / total;
    const double f_right = cdf_barx(t);
    const double f_left = (t == 0.5) ? 0.25 : f_right;  // left limit at the atom
    sup = std::max({sup, std::abs(emp_left - f_left), std::abs(emp_right - f_right)});
    i = j;
  }
  return sup;
}

std::vector<ProbeRow> probe_table(std::uint64_t samples, std::uint64_t seed, int threads) {
  std::vector<ProbeSpec> specs;
  for (int k = 1; k <= 9; ++k) specs.push_back({Quantity::ContainsPoint, k / 10.0});
  specs.push_back({Quantity::PMean});
  specs.push_back({Quantity::PSecondMoment});
  specs.push_back({Quantity::BarxInOther});
  specs.push_back({Quantity::Disjoint});
  specs.push_back({Quantity::BarxQuartic});

  std::vector<ProbeRow> rows;
  for (std::size_t i = 0; i < specs.size(); ++i)
    rows.push_back({describe(specs[i]), closed_form(specs[i]),
                    estimate_parallel(specs[i], samples, split_seed(seed, i), threads)});
  return rows;
}

}  // namespace isat
