#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "isat/interval_math.hpp"

namespace isat::queue {

/// B(j) = b for every j.
struct Deterministic {
  std::uint64_t b = 0;
};
/// B(j) ~ Bin(m, p).
struct BinomialFixedP {
  std::uint64_t m = 0;
  double p = 0.0;
};
/// B(j) ~ Bin(m, 2P(j)/n) with P(j) drawn fresh by sample_P.
struct BinomialRandomP {
  std::uint64_t m = 0;
  std::uint64_t n = 1;
};
/// As BinomialRandomP, but the trial count sweeps M(j) = m_lo + (j mod (m_hi - m_lo + 1)).
struct DriftingM {
  std::uint64_t m_lo = 0;
  std::uint64_t m_hi = 0;
  std::uint64_t n = 1;
};

using Arrival = std::variant<Deterministic, BinomialFixedP, BinomialRandomP, DriftingM>;

inline constexpr std::uint64_t kDefaultStepCap = 100'000'000;

struct QueueConfig {
  std::uint64_t a = 0;
  Arrival arrival = Deterministic{};
  std::uint64_t step_cap = kDefaultStepCap;
  bool record_trace = false;
};

enum class Status { Extinct, NonExtinct };

struct RunResult {
  Status status = Status::Extinct;
  std::uint64_t Z = 0;                 // meaningful only when Extinct
  std::vector<std::uint64_t> trace;    // Q(0), Q(1), ..., Q(Z+1) when recorded
};

/// Q(0) = 0, Q(1) = a, Q(j+1) = Q(j) - 1 + B(j+1) while Q(j) > 0, and 0
/// afterwards. Z = inf{j > 0 : Q(j) = 0} - 1. Runs whose step count reaches
/// step_cap are reported NonExtinct.
[[nodiscard]] RunResult simulate(const QueueConfig& config, std::uint64_t seed);

/// Replays the update rule on a trace given the arrivals B(j) = Q(j) - Q(j-1) + 1.
/// True iff the trace is consistent with the recursion and ends at the first zero.
[[nodiscard]] bool replay_consistent(std::uint64_t a, const std::vector<std::uint64_t>& trace);

/// E B for the arrival law.
[[nodiscard]] double arrival_mean(const Arrival& arrival);

/// a / (1 - lambda_B); throws std::domain_error unless lambda_B < 1.
[[nodiscard]] double mean_Z(double a, double lambda_B);

/// Z for runs i = 0..runs-1, run i seeded with split_seed(seed, i).
[[nodiscard]] std::vector<RunResult> simulate_many(const QueueConfig& config, std::size_t runs,
                                                   std::uint64_t seed, int threads);

struct CoupledResult {
  std::uint64_t z_minus;
  std::uint64_t z_plus;
};

/// Two random-P queues driven by the same P(j) and uniforms U(j, i):
/// B^±(j) = #{i <= m_± : U(j,i) <= 2P(j)/n}. Requires m_minus <= m_plus.
[[nodiscard]] CoupledResult simulate_coupled(std::uint64_t a, std::uint64_t m_minus,
                                             std::uint64_t m_plus, std::uint64_t n,
                                             std::uint64_t seed,
                                             std::uint64_t step_cap = kDefaultStepCap);

struct MeanRow {
  std::uint64_t a;
  std::uint64_t m;
  std::uint64_t n;
  double lambda_B;
  double closed_form;
  double mean;
  double std_error;
  std::size_t runs;
};
[[nodiscard]] MeanRow mean_experiment(std::uint64_t a, std::uint64_t m, std::uint64_t n,
                                      std::size_t runs, std::uint64_t seed, int threads);

struct TailRow {
  std::uint64_t alpha;
  std::size_t exceed;
  double probability;
};
struct TailResult {
  std::vector<TailRow> rows;
  double slope = 0.0;           // fitted d log Pr[Z >= alpha] / d alpha
  std::size_t fit_points = 0;
};

/// Empirical Pr[Z >= alpha] and a weighted log-linear fit over the grid points
/// with at least `min_count` exceedances.
[[nodiscard]] TailResult tail_estimate(std::uint64_t a, std::uint64_t m, std::uint64_t n,
                                       const std::vector<std::uint64_t>& alpha_grid,
                                       std::size_t runs, std::uint64_t seed, int threads,
                                       std::size_t min_count = 10);

/// exp(13/12 l (y-1) + 6/5 l^2 (y-1)^2); throws std::domain_error unless l (y-1) <= 1/2.
[[nodiscard]] double pgf_bound(double y, double lambda);

/// Monte-Carlo E[y^B] for B ~ Bin(m, 2P/n).
[[nodiscard]] Estimate pgf_monte_carlo(double y, std::uint64_t m, std::uint64_t n,
                                       std::uint64_t samples, std::uint64_t seed, int threads);

/// 12^3 / (5 * 13^2).
inline constexpr double kExponentK = 1728.0 / 845.0;

struct ExponentDiagnostic {
  double u;            // larger root of the stationarity quadratic
  double delta;        // r u + (K/2) r^2 u^2 - log(1+u)
  double derivative;   // of the a/alpha-corrected exponent at u; zero up to rounding
};

/// Root u_r and exponent value delta_r(u_r) for ratio r = 13 lambda / 12 and a/alpha.
[[nodiscard]] ExponentDiagnostic exponent_diagnostic(double r, double a_over_alpha = 0.0);

}  // namespace isat::queue
