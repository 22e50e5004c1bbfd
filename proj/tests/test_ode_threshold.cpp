#include <catch_amalgamated.hpp>

#include <cmath>

#include "isat/ode_threshold.hpp"

using namespace isat::ode;
using Catch::Approx;

TEST_CASE("right-hand side examples") {
  CHECK(rhs(1.0, 0.0, 2.0) == Approx(-3.0));
  CHECK(rhs(1.0, 0.0, 1.0) == Approx(-1.5));
  CHECK(std::abs(rhs(0.8, 4.8, 3.0) - 6.24) <= 1e-12);
  // On y = 6x: (-18 c x^4 + 12x * 6x) / (6x^2) = -3 c x^2 + 12.
  for (const double x : {0.1, 0.3, 0.7}) CHECK(rhs(x, 6 * x, 2.0) == Approx(-6.0 * x * x + 12));
  CHECK_THROWS_AS(rhs(0.5, 6.0, 1.0), Singularity);
  CHECK_THROWS_AS(rhs(0.0, 0.0, 1.0), Singularity);
}

TEST_CASE("barriers hold along the trajectory") {
  for (const double c : {0.5, 1.0, 2.0, 3.0}) {
    const auto sol = integrate(c, 0.05, 1e-4);
    INFO("c = " << c);
    REQUIRE(sol.status == Status::Completed);
    CHECK(sol.x.front() == 1.0);
    CHECK(sol.x.back() == 0.05);
    CHECK(barrier_report(sol).holds());
  }
  const auto sol = integrate(2.3, 1e-3);
  CHECK(sol.status == Status::Completed);
  CHECK(barrier_report(sol).holds());
}

TEST_CASE("step halving changes y by at most 1e-8") {
  const auto coarse = integrate(2.0, 0.1, 1e-3);
  const auto fine = integrate(2.0, 0.1, 5e-4);
  REQUIRE(fine.x.size() == 2 * coarse.x.size() - 1);
  double worst = 0;
  for (std::size_t k = 0; k < coarse.x.size(); ++k) {
    REQUIRE(fine.x[2 * k] == Approx(coarse.x[k]).margin(1e-12));
    worst = std::max(worst, std::abs(coarse.y[k] - fine.y[2 * k]));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("barrier numerator sign") {
  // On y = 5(1-x) the slope exceeds -5 for every c <= 3, so the trajectory cannot
  // cross this barrier from below. At x = 1 the numerator is -54 + 60.
  for (int i = 1; i < 100; ++i) {
    const double x = 0.8 + 0.2 * i / 100.0;
    CHECK(rhs(x, 5 * (1 - x), 3.0) > -5.0);
  }
  const double x = 1.0, y = 0.0, c = 3.0;
  CHECK(-18 * c * std::pow(x, 4) + 5 * (12 * x - y) * x == Approx(6.0));
}

TEST_CASE("time along the trajectory") {
  CHECK(dt_dx(1.0, 0.0) == -1.0);
  const auto sol = integrate(1.5, 0.2, 1e-4);
  for (std::size_t i = 1; i < sol.t.size(); ++i) CHECK(sol.t[i] > sol.t[i - 1]);
  CHECK(sol.t.front() == 0.0);
  CHECK(sol.y3(0) == 1.5);
  CHECK(sol.y_at(1.0) == 0.0);
  CHECK(sol.y_at(0.5) == Approx(sol.y[5000]).margin(1e-12));
}

TEST_CASE("threshold examples") {
  CHECK(threshold_predicate(2.0, 1e-3));
  CHECK_FALSE(threshold_predicate(3.0, 1e-3));
  const double c = find_threshold(1e-3, 1.0, 3.0, 1e-4, 1e-4);
  CHECK(c >= 2.25);
  CHECK(c <= 2.35);
  CHECK(threshold_predicate(c - 1e-3, 1e-3, 1e-4));
  CHECK_FALSE(threshold_predicate(c + 1e-3, 1e-3, 1e-4));
  CHECK_THROWS_AS(find_threshold(1e-3, 2.6, 3.0, 1e-3), BracketError);
}

TEST_CASE("handoff to the 2-iSAT stage") {
  const auto r = handoff_check(2.3, 35.0 / 24.0, 1e-4);
  CHECK(r.passes);
  CHECK(r.clause_mass <= r.budget);
  CHECK(r.residual_density < 1.5);
  CHECK(r.clause_mass == Approx(r.y_third + 2.3 / 27));
  CHECK(35.0 / 24.0 < 1.5);

  const auto none = handoff_check(0.0, 35.0 / 24.0);
  CHECK(none.y_third == 0.0);
  CHECK(none.passes);
}

TEST_CASE("drift functions") {
  CHECK(drift_f(0.5, 0.0) == -1.0);
  CHECK(drift_f(0.8, 0.2) == Approx(-9.4 / 7.0));
  CHECK(drift_g3(0.5, 0.0, 0.1) == Approx(-0.6));
  // Along y3 = c x^3, dY2/dX = g2/f must reproduce the ODE.
  for (const double c : {0.5, 2.0}) {
    for (const double x : {0.9, 0.6, 0.4}) {
      const double y = 0.3 * x;
      CHECK(drift_g2(x, y, c * x * x * x) / drift_f(x, y) == Approx(rhs(x, y, c)));
      CHECK(drift_g3(x, y, c * x * x * x) / drift_f(x, y) == Approx(3 * c * x * x));
    }
  }
  // Raw counts and densities agree.
  CHECK(drift_g2(80000, 20000, 102400) == Approx(drift_g2(0.8, 0.2, 1.024)));
  CHECK(eps_good(0.5, 0.2, 1e-3));
  CHECK_FALSE(eps_good(0.5, 0.47, 1e-3));
  CHECK_FALSE(eps_good(1e-4, 0.0, 1e-3));
}
