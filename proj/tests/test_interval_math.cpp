#include <catch_amalgamated.hpp>

#include <cmath>
#include <functional>

#include "isat/interval_math.hpp"

using namespace isat;
using Catch::Approx;

namespace {

// Composite Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
  return s * h / 3;
}

// E g(X) for X = bar_x of a random interval, from the density 2t on [0,1/2),
// the atom 1/2 at 1/2 and the density 2(1-t) on (1/2,1].
double expect_barx(const std::function<double(double)>& g) {
  return simpson([&](double t) { return 2 * t * g(t); }, 0.0, 0.5) + 0.5 * g(0.5) +
         simpson([&](double t) { return 2 * (1 - t) * g(t); }, 0.5, 1.0);
}

}  // namespace

TEST_CASE("bar_x examples") {
  CHECK(bar_x(Interval(0.1, 0.3)) == 0.3);
  CHECK(bar_x(Interval(0.2, 0.8)) == 0.5);
  CHECK(bar_x(Interval(0.6, 0.9)) == 0.6);
  CHECK(bar_x(Interval(0.5, 0.5)) == 0.5);
}

TEST_CASE("bar_x lies in the interval and is nearest to 1/2") {
  Rng rng(1);
  for (int i = 0; i < 100000; ++i) {
    const Interval iv = sample_interval(rng);
    const double x = bar_x(iv);
    REQUIRE(iv.contains(x));
    CHECK(std::abs(x - 0.5) <= std::abs(iv.lo - 0.5));
    CHECK(std::abs(x - 0.5) <= std::abs(iv.hi - 0.5));
  }
}

TEST_CASE("cdf_barx examples") {
  CHECK(cdf_barx(0.25) == 0.0625);
  CHECK(cdf_barx(0.5) == 0.75);
  CHECK(cdf_barx(1.0) == 1.0);
  CHECK(cdf_barx(-0.1) == 0.0);
  CHECK(cdf_barx(std::nextafter(0.5, 0.0)) == Approx(0.25));
}

TEST_CASE("P examples and range") {
  CHECK(p_of(Interval(0.2, 0.8)) == 0.5);
  CHECK(p_of(Interval(0.0, 0.0)) == 1.0);
  Rng rng(2);
  for (int i = 0; i < 100000; ++i) {
    const double p = sample_P(rng);
    REQUIRE(p >= 0.5);
    REQUIRE(p <= 1.0);
  }
}

TEST_CASE("closed forms agree with quadrature over the bar_x law") {
  const auto m = p_moments();
  CHECK(m.mean == 13.0 / 24.0);
  CHECK(m.second_moment == 0.3);
  CHECK(expect_barx([](double x) { return 1 - 2 * x * (1 - x); }) == Approx(13.0 / 24.0).epsilon(1e-10));
  CHECK(expect_barx([](double x) { double p = 1 - 2 * x * (1 - x); return p * p; }) ==
        Approx(0.3).epsilon(1e-10));
  CHECK(expect_barx([](double x) { double q = x * (1 - x); return q * q; }) ==
        Approx(13.0 / 240.0).epsilon(1e-10));
  // Pr[bar_x(I) in J] = E 2X(1-X) = 1 - E P.
  CHECK(expect_barx([](double x) { return 2 * x * (1 - x); }) == Approx(11.0 / 24.0).epsilon(1e-10));
  CHECK(prob_barx_in_other() == Approx(1 - p_moments().mean));
  CHECK(barx_quartic_moment() == Approx(13.0 / (15 * 16)));
  CHECK(prob_disjoint() == Approx(1.0 / 3.0));
  CHECK(prob_contains(0.25) == 0.375);
  CHECK(prob_contains(0.5) == 0.5);
}

TEST_CASE("disjointness probability by quadrature") {
  // hi_I has density 2h; J lies right of h with probability (1-h)^2.
  const double left = simpson([](double h) { return 2 * h * (1 - h) * (1 - h); }, 0.0, 1.0);
  CHECK(2 * left == Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("Monte-Carlo estimates at 10^6 samples") {
  const std::uint64_t N = 1'000'000;
  SECTION("containment at 0.5 and 0.25") {
    const auto half = estimate_parallel({Quantity::ContainsPoint, 0.5}, N, 10, 2);
    CHECK(std::abs(half.mean - 0.5) < 0.002);
    const auto quarter = estimate_parallel({Quantity::ContainsPoint, 0.25}, N, 11, 2);
    CHECK(std::abs(quarter.mean - 0.375) < 0.002);
  }
  SECTION("disjointness") {
    const auto d = estimate_parallel({Quantity::Disjoint}, N, 12, 2);
    CHECK(std::abs(d.mean - 1.0 / 3.0) < 0.002);
  }
  SECTION("P mean and bar_x in other") {
    const auto p = estimate_parallel({Quantity::PMean}, N, 13, 2);
    CHECK(std::abs(p.mean - 13.0 / 24.0) < 0.0015);
    const auto o = estimate_parallel({Quantity::BarxInOther}, N, 14, 2);
    CHECK(std::abs(o.mean - 11.0 / 24.0) < 0.0015);
  }
  SECTION("every law within 3 standard errors") {
    for (const auto& row : probe_table(N, 15, 2)) {
      INFO(row.quantity);
      CHECK(std::abs(row.estimate.mean - row.closed_form) <= 3 * row.estimate.std_error);
      CHECK(row.estimate.samples == N);
    }
  }
}

TEST_CASE("empirical CDF of bar_x including the atom") {
  CHECK(barx_cdf_sup_distance(1'000'000, 3) <= 0.005);
  Rng rng(4);
  std::size_t at_half = 0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) at_half += bar_x(sample_interval(rng)) == 0.5;
  CHECK(std::abs(static_cast<double>(at_half) / draws - 0.5) < 0.005);
}

TEST_CASE("serial and OpenMP estimators are bit-identical") {
  for (const auto q : {Quantity::ContainsPoint, Quantity::PMean, Quantity::Disjoint}) {
    const ProbeSpec spec{q, 0.3};
    const auto s = estimate_serial(spec, 100'003, 77);
    for (int threads : {1, 2, 4, 8}) {
      const auto p = estimate_parallel(spec, 100'003, 77, threads);
      CHECK(p.mean == s.mean);
      CHECK(p.std_error == s.std_error);
      CHECK(p.samples == s.samples);
    }
  }
}
