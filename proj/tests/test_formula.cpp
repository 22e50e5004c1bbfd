#include <catch_amalgamated.hpp>

#include <cmath>
#include <set>
#include <sstream>

#include "isat/formula.hpp"
#include "isat/formula_io.hpp"
#include "isat/interval_math.hpp"

using namespace isat;

namespace {

Formula parse(const std::string& text) {
  std::istringstream in(text);
  return parse_formula(in);
}

std::string dump(const Formula& f) {
  std::ostringstream out;
  write_formula(out, f);
  return out.str();
}

}  // namespace

TEST_CASE("interval is closed and validated") {
  const Interval iv(0.25, 0.75);
  CHECK(iv.contains(0.25));
  CHECK(iv.contains(0.75));
  CHECK_FALSE(iv.contains(0.24));
  CHECK_FALSE(iv.contains(0.76));
  CHECK(Interval(0.3, 0.3).contains(0.3));
  CHECK_THROWS_AS(Interval(0.6, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(Interval(-0.1, 0.4), std::invalid_argument);
  CHECK_THROWS_AS(Interval(0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(Interval(std::nan(""), 0.5), std::invalid_argument);
}

TEST_CASE("disjointness uses closed semantics") {
  CHECK(Interval(0, 0.2).disjoint(Interval(0.3, 0.6)));
  CHECK_FALSE(Interval(0, 0.3).disjoint(Interval(0.3, 0.6)));
  CHECK(Interval(0.7, 1).disjoint(Interval(0, 0.69)));
}

TEST_CASE("clauses reject repeated variables and overlong literal lists") {
  CHECK_THROWS_AS((Clause{{0, {0, 1}}, {0, {0.2, 0.3}}}), std::invalid_argument);
  CHECK_THROWS_AS((Clause{{0, {}}, {1, {}}, {2, {}}, {3, {}}}), std::invalid_argument);
  const Clause c{{2, {0.1, 0.2}}, {0, {0.5, 0.9}}};
  REQUIRE(c.size() == 2);
  CHECK(c[0].var == 2);  // literal order is preserved
  CHECK(c[1].var == 0);
  Formula f(2);
  CHECK_THROWS_AS(f.add_clause(Clause{{2, {}}}), std::invalid_argument);
}

TEST_CASE("assignment statuses") {
  Assignment a(3);
  CHECK_FALSE(a.has(0));
  a.set_tentative(0, 0.5);
  CHECK(a.status(0) == ValueStatus::Tentative);
  a.set_tentative(0, 0.25);
  CHECK(a[0] == 0.25);
  a.make_permanent(0);
  CHECK(a.status(0) == ValueStatus::Permanent);
  CHECK_THROWS_AS(a.set_tentative(0, 0.1), std::logic_error);
  CHECK_THROWS_AS(a.set_permanent(0, 0.1), std::logic_error);
  CHECK_THROWS_AS(a.clear(0), std::logic_error);
  a.override_permanent(0, 0.9);
  CHECK(a[0] == 0.9);
  CHECK_THROWS_AS(a.make_permanent(1), std::logic_error);
  a.set_permanent(2, 0.3);
  CHECK(*a.value(2) == 0.3);
  CHECK_FALSE(a.value(1).has_value());
}

TEST_CASE("verify examples") {
  Formula f(2);
  f.add_clause({{0, {0.0, 0.4}}, {1, {0.6, 1.0}}});
  Assignment a(2);
  a.set_permanent(0, 0.2);
  a.set_permanent(1, 0.0);
  CHECK(verify(f, a));

  Assignment b(2);
  b.set_permanent(0, 0.5);
  b.set_permanent(1, 0.5);
  CHECK_FALSE(verify(f, b));

  Formula with_empty = f;
  with_empty.add_clause(Clause{});
  CHECK_FALSE(verify(with_empty, a));

  Assignment partial(2);
  partial.set_permanent(1, 0.7);
  CHECK_THROWS_AS((void)verify(f, partial), IncompleteAssignment);
}

TEST_CASE("verify is monotone under clause removal") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = generate_formula(6, 10, 3, seed);
    Rng rng(split_seed(seed, 99));
    Assignment a(6);
    for (Var v = 0; v < 6; ++v) a.set_permanent(v, uniform01(rng));
    if (!verify(f, a)) continue;
    for (std::size_t drop = 0; drop < f.num_clauses(); ++drop) {
      Formula g(6);
      for (std::size_t i = 0; i < f.num_clauses(); ++i)
        if (i != drop) g.add_clause(f.clause(i));
      CHECK(verify(g, a));
    }
  }
}

TEST_CASE("generator examples") {
  const Formula empty = generate_formula(3, 0, 3, 1);
  CHECK(empty.num_clauses() == 0);
  CHECK(empty.num_vars() == 3);

  const Formula one = generate_formula(3, 1, 3, 5);
  REQUIRE(one.num_clauses() == 1);
  std::set<Var> vars;
  for (const auto& l : one.clause(0).literals()) vars.insert(l.var);
  CHECK(vars == std::set<Var>{0, 1, 2});

  CHECK_THROWS_AS(generate_formula(2, 1, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_formula(5, 1, 4, 1), std::invalid_argument);
  CHECK_THROWS_AS(generate_formula(5, 1, 1, 1), std::invalid_argument);

  CHECK(generate_formula(50, 100, 3, 42) == generate_formula(50, 100, 3, 42));
  CHECK_FALSE(generate_formula(50, 100, 3, 42) == generate_formula(50, 100, 3, 43));
}

TEST_CASE("generated clauses have distinct variables and valid intervals") {
  const Formula f = generate_formula(10, 2000, 3, 7);
  CHECK(f.count_length(3) == 2000);
  for (const auto& c : f.clauses()) {
    REQUIRE(c.size() == 3);
    CHECK(c[0].var != c[1].var);
    CHECK(c[0].var != c[2].var);
    CHECK(c[1].var != c[2].var);
    for (const auto& l : c.literals()) CHECK(l.sign.lo <= l.sign.hi);
  }
  const Formula mixed = generate_mixed_formula(20, 30, 40, 3);
  CHECK(mixed.count_length(2) == 30);
  CHECK(mixed.count_length(3) == 40);
}

TEST_CASE("generated literals contain 1/2 half the time") {
  // 10^6 literals; binomial standard error is 5e-4.
  const Formula f = generate_formula(1000, 333'334, 3, 11);
  std::size_t hits = 0, total = 0;
  for (const auto& c : f.clauses())
    for (const auto& l : c.literals()) {
      hits += l.sign.contains(0.5);
      ++total;
    }
  CHECK(total >= 1'000'000);
  CHECK(std::abs(static_cast<double>(hits) / static_cast<double>(total) - 0.5) < 0.002);
}

TEST_CASE("generator containment marginals match 2x(1-x)") {
  const Formula f = generate_formula(1000, 333'334, 3, 12);
  for (int k = 1; k <= 9; ++k) {
    const double x = k / 10.0;
    double hits = 0, total = 0;
    for (const auto& c : f.clauses())
      for (const auto& l : c.literals()) {
        hits += l.sign.contains(x);
        total += 1;
      }
    const double p = 2 * x * (1 - x);
    const double se = std::sqrt(p * (1 - p) / total);
    CHECK(std::abs(hits / total - p) <= 3 * se);
  }
}

TEST_CASE("formula text parses") {
  const Formula f = parse("# comment\np isat 3 1\n1 0.25 0.75 2 0.0 0.1 3 0.9 1.0 0\n");
  REQUIRE(f.num_clauses() == 1);
  const Clause& c = f.clause(0);
  REQUIRE(c.size() == 3);
  CHECK(c[0].var == 0);
  CHECK(c[0].sign == Interval(0.25, 0.75));
  CHECK(c[1].var == 1);
  CHECK(c[1].sign == Interval(0.0, 0.1));
  CHECK(c[2].var == 2);
  CHECK(c[2].sign == Interval(0.9, 1.0));
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      (void)parse(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.line);
    }
    return -1L;
  };
  CHECK(line_of("p isat 5 2\n1 0 1 0\n2 0 1 0\n3 0 1 0\n") == 4);
  CHECK(line_of("p isat 5 2\n1 0 1 0\n") == 0);
  CHECK(line_of("p isat 2 1\n3 0 1 0\n") == 2);
  CHECK(line_of("p isat 2 1\n1 0.6 0.2 0\n") == 2);
  CHECK(line_of("p isat 2 1\n1 0 1\n") == 2);
  CHECK(line_of("p isat 2 1\n1 0 1 1 0 1 0\n") == 2);
  CHECK(line_of("q isat 2 1\n") == 1);
  CHECK(line_of("") == 0);
}

TEST_CASE("write then read is the identity") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Formula f = generate_formula(40, 100, 2 + seed % 2, seed);
    const Formula g = parse(dump(f));
    CHECK(f == g);
  }
  Formula awkward(2);
  awkward.add_clause({{0, {0.1 + 0.2, std::nextafter(1.0, 0.0)}}, {1, {5e-324, 1e-300}}});
  awkward.add_clause(Clause{{1, {0.0, 0.0}}});
  CHECK(parse(dump(awkward)) == awkward);
}

TEST_CASE("format_double round-trips") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double x = uniform01(rng);
    CHECK(std::stod(format_double(x)) == x);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
}

TEST_CASE("assignment output format") {
  Assignment a(3);
  a.set_permanent(0, 0.5);
  a.set_permanent(2, 0.125);
  std::ostringstream out;
  write_assignment(out, a);
  CHECK(out.str() == "v 1 0.5\nv 3 0.125\n");
}
