#include <catch_amalgamated.hpp>

#include <cmath>

#include "isat/branching_queue.hpp"
#include "isat/stats.hpp"

using namespace isat;
using namespace isat::queue;
using Catch::Approx;

namespace {

RunResult run(std::uint64_t a, Arrival arr, std::uint64_t seed = 1, std::uint64_t cap = kDefaultStepCap) {
  QueueConfig cfg;
  cfg.a = a;
  cfg.arrival = arr;
  cfg.step_cap = cap;
  cfg.record_trace = true;
  return simulate(cfg, seed);
}

}  // namespace

TEST_CASE("queue examples") {
  const auto zero = run(0, Deterministic{5});
  CHECK(zero.status == Status::Extinct);
  CHECK(zero.Z == 0);

  const auto three = run(3, Deterministic{0});
  REQUIRE(three.status == Status::Extinct);
  CHECK(three.Z == 3);
  CHECK(three.trace == std::vector<std::uint64_t>{0, 3, 2, 1, 0});
  CHECK(replay_consistent(3, three.trace));

  const auto stuck = run(2, Deterministic{1}, 1, 1000);
  CHECK(stuck.status == Status::NonExtinct);

  CHECK(run(4, BinomialFixedP{10, 0.0}).Z == 4);
}

TEST_CASE("mean of Z") {
  CHECK(mean_Z(1, 0) == 1);
  CHECK(mean_Z(2, 0.5) == 4);
  CHECK_THROWS_AS(mean_Z(1, 1.0), std::domain_error);
  CHECK(arrival_mean(BinomialFixedP{10, 0.3}) == Approx(3.0));
  CHECK(arrival_mean(BinomialRandomP{6000, 13000}) == Approx(2 * 13.0 / 24 * 6000 / 13000));
}

TEST_CASE("simulated mean matches a/(1-lambda)") {
  // m = 6000, n = 13000 gives lambda = 1/2 exactly.
  const auto row = mean_experiment(2, 6000, 13000, 100'000, 31, 2);
  CHECK(row.lambda_B == Approx(0.5));
  CHECK(row.closed_form == Approx(4.0));
  CHECK(std::abs(row.mean - 4.0) / 4.0 <= 0.05);
  CHECK(std::abs(row.mean - 4.0) <= 4 * row.std_error);
}

TEST_CASE("tail probabilities") {
  const auto t = tail_estimate(3, 6000, 13000, {3, 4, 10, 20, 30, 40, 50, 60}, 100'000, 7, 2);
  REQUIRE(t.rows.size() == 8);
  CHECK(t.rows[0].probability == 1.0);
  for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(t.rows[i].probability <= t.rows[i - 1].probability);
  CHECK(t.fit_points >= 2);
  CHECK(t.slope < -0.01);

  // With no arrivals Z = a exactly.
  QueueConfig cfg;
  cfg.a = 5;
  cfg.arrival = BinomialRandomP{0, 100};
  for (const auto& r : simulate_many(cfg, 100, 3, 1)) CHECK(r.Z == 5);
}

TEST_CASE("traces replay consistently") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto r = run(1 + s % 5, BinomialRandomP{700, 1300}, s);
    REQUIRE(r.status == Status::Extinct);
    CHECK(replay_consistent(1 + s % 5, r.trace));
    CHECK(r.trace.size() == r.Z + 2);
  }
  CHECK_FALSE(replay_consistent(2, {0, 2, 0, 1, 0}));
  CHECK_FALSE(replay_consistent(2, {0, 3, 2, 1, 0}));
  CHECK_FALSE(replay_consistent(2, {0, 2, 1}));
}

TEST_CASE("coupled queues are ordered") {
  for (std::uint64_t s = 0; s < 300; ++s) {
    const auto c = simulate_coupled(3, 4000, 6000, 13000, s);
    CHECK(c.z_plus >= c.z_minus);
  }
  CHECK_THROWS_AS(simulate_coupled(1, 10, 5, 100, 1), std::invalid_argument);
}

TEST_CASE("drifting trial counts are sandwiched") {
  // M(j) sweeps [5000, 6000]; the mean must lie between the fixed-m means.
  QueueConfig lo, mid, hi;
  lo.a = mid.a = hi.a = 2;
  lo.arrival = BinomialRandomP{5000, 13000};
  mid.arrival = DriftingM{5000, 6000, 13000};
  hi.arrival = BinomialRandomP{6000, 13000};
  auto mean = [](const QueueConfig& c) {
    double s = 0;
    const auto rs = simulate_many(c, 50'000, 17, 2);
    for (const auto& r : rs) s += static_cast<double>(r.Z);
    return s / static_cast<double>(rs.size());
  };
  const double a = mean(lo), b = mean(mid), c = mean(hi);
  CHECK(a < b);
  CHECK(b < c);
}

TEST_CASE("arrival pgf bound") {
  CHECK(pgf_bound(1.0, 0.7) == 1.0);
  // exp(13/12 * 0.1 + 6/5 * 0.01)
  CHECK(pgf_bound(1.2, 0.5) == Approx(std::exp(0.10833333333333334 + 0.012)).epsilon(1e-14));
  CHECK(pgf_bound(1.2, 0.5) == Approx(1.1279).epsilon(1e-4));
  CHECK_THROWS_AS(pgf_bound(3.0, 0.5), std::domain_error);
  // lambda = m/n here; the mean arrival is 13/12 lambda.
  const auto e = pgf_monte_carlo(1.2, 6500, 13000, 1'000'000, 21, 2);
  CHECK(e.mean <= pgf_bound(1.2, 0.5));
  for (const double y : {0.5, 0.9, 1.1, 1.5, 2.0}) {
    const auto mc = pgf_monte_carlo(y, 6500, 13000, 200'000, 22, 2);
    INFO("y = " << y);
    CHECK(mc.mean <= pgf_bound(y, 0.5) + 3 * mc.std_error);
  }
}

TEST_CASE("large-deviation exponent is negative") {
  for (int i = 1; i <= 20; ++i) {
    const double r = 0.2 + 0.7 * i / 21.0;
    const auto d = exponent_diagnostic(r);
    CHECK(d.u > 0);
    CHECK(d.delta < 0);
    CHECK(d.derivative == Approx(0.0).margin(1e-12));
  }
  CHECK_THROWS_AS(exponent_diagnostic(1.2), std::domain_error);
  CHECK_THROWS_AS(exponent_diagnostic(0.5, 0.6), std::domain_error);
}

TEST_CASE("fixed-p arrivals are binomial") {
  // B(j) = Q(j+1) - Q(j) + 1 along many traces.
  std::vector<std::size_t> arrivals;
  for (std::uint64_t s = 0; arrivals.size() < 20000; ++s) {
    const auto r = run(20, BinomialFixedP{8, 0.1}, s);
    for (std::size_t j = 1; j + 1 < r.trace.size(); ++j) arrivals.push_back(r.trace[j + 1] + 1 - r.trace[j]);
  }
  const auto chi = stats::chi_square_gof(arrivals, stats::binomial_pmf(8, 0.1));
  CHECK(chi.p_value > 0.001);
}

TEST_CASE("simulate_many is thread-count invariant") {
  QueueConfig cfg;
  cfg.a = 3;
  cfg.arrival = BinomialRandomP{6000, 13000};
  const auto a = simulate_many(cfg, 5000, 44, 1);
  for (int t : {2, 8}) {
    const auto b = simulate_many(cfg, 5000, 44, t);
    REQUIRE(a.size() == b.size());
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i) same = same && a[i].Z == b[i].Z && a[i].status == b[i].status;
    CHECK(same);
  }
}
