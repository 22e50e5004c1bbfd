#include "isat/branching_queue.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "isat/parallel.hpp"
#include "isat/stats.hpp"

namespace isat::queue {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::uint64_t binomial(Rng& rng, std::uint64_t m, double p) {
  if (m == 0 || p <= 0.0) return 0;
  if (p >= 1.0) return m;
  return std::binomial_distribution<std::uint64_t>(m, p)(rng);
}

double random_p(Rng& rng, std::uint64_t n) {
  return std::min(1.0, 2.0 * sample_P(rng) / static_cast<double>(n));
}

std::uint64_t draw_arrivals(const Arrival& arrival, std::uint64_t j, Rng& rng) {
  return std::visit(
      overloaded{
          [](const Deterministic& d) { return d.b; },
          [&](const BinomialFixedP& b) { return binomial(rng, b.m, b.p); },
          [&](const BinomialRandomP& b) { return binomial(rng, b.m, random_p(rng, b.n)); },
          [&](const DriftingM& d) {
            const std::uint64_t m = d.m_lo + j % (d.m_hi - d.m_lo + 1);
            return binomial(rng, m, random_p(rng, d.n));
          },
      },
      arrival);
}

void validate(const Arrival& arrival) {
  std::visit(overloaded{
                 [](const Deterministic&) {},
                 [](const BinomialFixedP& b) {
                   if (!(b.p >= 0.0 && b.p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
                 },
                 [](const BinomialRandomP& b) {
                   if (b.n == 0) throw std::invalid_argument("n must be positive");
                 },
                 [](const DriftingM& d) {
                   if (d.n == 0) throw std::invalid_argument("n must be positive");
                   if (d.m_lo > d.m_hi) throw std::invalid_argument("m_lo must not exceed m_hi");
                 },
             },
             arrival);
}

}  // namespace

RunResult simulate(const QueueConfig& config, std::uint64_t seed) {
  validate(config.arrival);
  Rng rng(seed);
  RunResult r;
  if (config.record_trace) r.trace = {0, config.a};
  std::uint64_t q = config.a;
  std::uint64_t j = 1;  // q holds Q(j)
  while (q > 0) {
    if (j >= config.step_cap) {
      r.status = Status::NonExtinct;
      return r;
    }
    q = q - 1 + draw_arrivals(config.arrival, j + 1, rng);
    ++j;
    if (config.record_trace) r.trace.push_back(q);
  }
  r.Z = j - 1;
  return r;
}

bool replay_consistent(std::uint64_t a, const std::vector<std::uint64_t>& trace) {
  if (trace.size() < 2 || trace[0] != 0 || trace[1] != a) return false;
  for (std::size_t j = 1; j + 1 < trace.size(); ++j) {
    if (trace[j] == 0) return false;  // must stop at the first zero
    if (trace[j + 1] + 1 < trace[j]) return false;  // B(j+1) >= 0
  }
  return trace.back() == 0;
}

double arrival_mean(const Arrival& arrival) {
  const double mean_p = p_moments().mean;
  return std::visit(
      overloaded{
          [](const Deterministic& d) { return static_cast<double>(d.b); },
          [](const BinomialFixedP& b) { return static_cast<double>(b.m) * b.p; },
          [&](const BinomialRandomP& b) {
            return 2.0 * mean_p * static_cast<double>(b.m) / static_cast<double>(b.n);
          },
          [&](const DriftingM& d) {
            const double m = (static_cast<double>(d.m_lo) + static_cast<double>(d.m_hi)) / 2.0;
            return 2.0 * mean_p * m / static_cast<double>(d.n);
          },
      },
      arrival);
}

double mean_Z(double a, double lambda_B) {
  if (!(lambda_B < 1.0)) throw std::domain_error("mean_Z requires lambda_B < 1");
  return a / (1.0 - lambda_B);
}

std::vector<RunResult> simulate_many(const QueueConfig& config, std::size_t runs,
                                     std::uint64_t seed, int threads) {
  return map_indexed(runs, threads, [&](std::size_t i) { return simulate(config, split_seed(seed, i)); });
}

CoupledResult simulate_coupled(std::uint64_t a, std::uint64_t m_minus, std::uint64_t m_plus,
                               std::uint64_t n, std::uint64_t seed, std::uint64_t step_cap) {
  if (m_minus > m_plus) throw std::invalid_argument("coupling needs m_minus <= m_plus");
  if (n == 0) throw std::invalid_argument("n must be positive");
  Rng rng(seed);
  std::uint64_t qm = a, qp = a;
  std::uint64_t j = 1;
  CoupledResult r{0, 0};
  bool minus_done = qm == 0, plus_done = qp == 0;
  while (!plus_done) {
    if (j >= step_cap) throw std::runtime_error("coupled queue hit the step cap");
    const double threshold = random_p(rng, n);
    std::uint64_t bm = 0, bp = 0;
    for (std::uint64_t i = 0; i < m_plus; ++i)
      if (uniform01(rng) <= threshold) {
        ++bp;
        if (i < m_minus) ++bm;
      }
    ++j;
    if (!minus_done) {
      qm = qm - 1 + bm;
      if (qm == 0) {
        minus_done = true;
        r.z_minus = j - 1;
      }
    }
    qp = qp - 1 + bp;
    if (qp == 0) {
      plus_done = true;
      r.z_plus = j - 1;
    }
  }
  if (!minus_done) throw std::logic_error("coupling violated: lower queue outlived upper");
  return r;
}

MeanRow mean_experiment(std::uint64_t a, std::uint64_t m, std::uint64_t n, std::size_t runs,
                        std::uint64_t seed, int threads) {
  QueueConfig cfg;
  cfg.a = a;
  cfg.arrival = BinomialRandomP{m, n};
  const double lambda_B = arrival_mean(cfg.arrival);
  const auto results = simulate_many(cfg, runs, seed, threads);
  std::vector<double> zs;
  zs.reserve(runs);
  for (const auto& r : results) {
    if (r.status != Status::Extinct) throw std::runtime_error("queue run did not go extinct");
    zs.push_back(static_cast<double>(r.Z));
  }
  const auto ms = stats::mean_se(zs);
  return {a, m, n, lambda_B, mean_Z(static_cast<double>(a), lambda_B), ms.mean, ms.std_error, runs};
}

TailResult tail_estimate(std::uint64_t a, std::uint64_t m, std::uint64_t n,
                         const std::vector<std::uint64_t>& alpha_grid, std::size_t runs,
                         std::uint64_t seed, int threads, std::size_t min_count) {
  QueueConfig cfg;
  cfg.a = a;
  cfg.arrival = BinomialRandomP{m, n};
  const auto results = simulate_many(cfg, runs, seed, threads);

  TailResult out;
  std::vector<double> xs, ys, ws;
  for (std::uint64_t alpha : alpha_grid) {
    std::size_t exceed = 0;
    for (const auto& r : results)
      if (r.status == Status::NonExtinct || r.Z >= alpha) ++exceed;
    const double p = runs ? static_cast<double>(exceed) / static_cast<double>(runs) : 0.0;
    out.rows.push_back({alpha, exceed, p});
    if (exceed >= min_count && exceed < runs) {
      xs.push_back(static_cast<double>(alpha));
      ys.push_back(std::log(p));
      ws.push_back(static_cast<double>(exceed));  // Var(log p_hat) ~ 1/count
    }
  }
  out.fit_points = xs.size();
  if (xs.size() >= 2) out.slope = stats::fit_line(xs, ys, ws).slope;
  return out;
}

double pgf_bound(double y, double lambda) {
  const double u = lambda * (y - 1.0);
  if (!(u <= 0.5)) throw std::domain_error("pgf_bound requires lambda*(y-1) <= 1/2");
  return std::exp(13.0 / 12.0 * u + 6.0 / 5.0 * u * u);
}

Estimate pgf_monte_carlo(double y, std::uint64_t m, std::uint64_t n, std::uint64_t samples,
                         std::uint64_t seed, int threads) {
  if (n == 0) throw std::invalid_argument("n must be positive");
  const std::uint64_t blocks = (samples + kMcBlockSize - 1) / kMcBlockSize;
  struct Sums {
    double sum = 0.0, sum_sq = 0.0;
    std::uint64_t count = 0;
  };
  const auto parts = map_indexed(blocks, threads, [&](std::size_t b) {
    Rng rng = make_rng(seed, b);
    const std::uint64_t count = std::min(kMcBlockSize, samples - b * kMcBlockSize);
    Sums s;
    for (std::uint64_t i = 0; i < count; ++i) {
      const double v = std::pow(y, static_cast<double>(binomial(rng, m, random_p(rng, n))));
      s.sum += v;
      s.sum_sq += v * v;
    }
    s.count = count;
    return s;
  });
  Sums t;
  for (const auto& s : parts) {
    t.sum += s.sum;
    t.sum_sq += s.sum_sq;
    t.count += s.count;
  }
  Estimate e;
  e.samples = t.count;
  if (t.count == 0) return e;
  e.mean = t.sum / static_cast<double>(t.count);
  if (t.count > 1) {
    const double var = std::max(0.0, (t.sum_sq - t.sum * e.mean) / static_cast<double>(t.count - 1));
    e.std_error = std::sqrt(var / static_cast<double>(t.count));
  }
  return e;
}

ExponentDiagnostic exponent_diagnostic(double r, double a_over_alpha) {
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("r must lie in (0,1)");
  if (!(a_over_alpha >= 0.0 && a_over_alpha < 1.0 - r))
    throw std::domain_error("a/alpha must lie in [0, 1-r)");
  constexpr double K = kExponentK;
  const double disc = (1.0 - K * r) * (1.0 - K * r) + 4.0 * K * (1.0 - a_over_alpha);
  const double u = (-(1.0 + K * r) + std::sqrt(disc)) / (2.0 * K * r);
  ExponentDiagnostic d;
  d.u = u;
  d.delta = r * u + K / 2.0 * r * r * u * u - std::log1p(u);
  d.derivative = r + K * r * r * u - (1.0 - a_over_alpha) / (1.0 + u);
  return d;
}

}  // namespace isat::queue
