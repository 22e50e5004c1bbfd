#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "isat/interval.hpp"
#include "isat/rng.hpp"

namespace isat {

/// Random interval: the order statistics of two iid uniform endpoints.
[[nodiscard]] Interval sample_interval(Rng& rng);

/// CDF of bar_x(I) for a random interval I. Has an atom of mass 1/2 at 1/2.
[[nodiscard]] double cdf_barx(double t) noexcept;

/// Pr[x in I] for a random interval I.
[[nodiscard]] constexpr double prob_contains(double x) noexcept { return 2.0 * x * (1.0 - x); }

struct PMoments {
  double mean;
  double second_moment;
};

/// Moments of P = 1 - 2X(1-X), X = bar_x(I): (13/24, 3/10).
[[nodiscard]] constexpr PMoments p_moments() noexcept { return {13.0 / 24.0, 3.0 / 10.0}; }

/// Pr[bar_x(I) in J] for independent random intervals: 11/24.
[[nodiscard]] constexpr double prob_barx_in_other() noexcept { return 11.0 / 24.0; }

/// Pr[two independent random intervals are disjoint]: 1/3.
[[nodiscard]] constexpr double prob_disjoint() noexcept { return 1.0 / 3.0; }

/// E[X^2 (1-X)^2] for X = bar_x(I): 13/240.
[[nodiscard]] constexpr double barx_quartic_moment() noexcept { return 13.0 / 240.0; }

/// P for a given interval: probability that a fresh random interval misses bar_x(iv).
[[nodiscard]] constexpr double p_of(const Interval& iv) noexcept {
  const double x = bar_x(iv);
  return 1.0 - 2.0 * x * (1.0 - x);
}

/// Draw P = 1 - 2 bar_x(I)(1 - bar_x(I)) for a fresh random interval; always in [1/2, 1].
[[nodiscard]] double sample_P(Rng& rng);

// ---------------------------------------------------------------------------
// Monte-Carlo estimators. Samples are split into fixed-size blocks, each with
// its own stream split_seed(seed, block); block partial sums are combined in
// block order, so the serial and OpenMP kernels return bit-identical results.

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

enum class Quantity {
  ContainsPoint,   // 1[x in I]
  PMean,           // P
  PSecondMoment,   // P^2
  BarxInOther,     // 1[bar_x(I) in J]
  Disjoint,        // 1[I and J disjoint]
  BarxQuartic,     // X^2 (1-X)^2
};

struct ProbeSpec {
  Quantity quantity;
  double point = 0.5;  // only for ContainsPoint
};

inline constexpr std::uint64_t kMcBlockSize = 1u << 14;

[[nodiscard]] Estimate estimate_serial(const ProbeSpec& spec, std::uint64_t samples,
                                       std::uint64_t seed);
[[nodiscard]] Estimate estimate_parallel(const ProbeSpec& spec, std::uint64_t samples,
                                         std::uint64_t seed, int threads);

[[nodiscard]] double closed_form(const ProbeSpec& spec);
[[nodiscard]] std::string describe(const ProbeSpec& spec);

/// Sup-distance between the empirical CDF of `samples` draws of bar_x and
/// cdf_barx, evaluated on both sides of every jump (so the atom at 1/2 counts).
[[nodiscard]] double barx_cdf_sup_distance(std::uint64_t samples, std::uint64_t seed);

struct ProbeRow {
  std::string quantity;
  double closed_form;
  Estimate estimate;
};

/// Table of every interval law: containment at 0.1..0.9, P moments,
/// bar_x-in-other, disjointness and the quartic moment.
[[nodiscard]] std::vector<ProbeRow> probe_table(std::uint64_t samples, std::uint64_t seed,
                                                int threads);

}  // namespace isat
