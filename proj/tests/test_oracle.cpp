#include <catch_amalgamated.hpp>

#include <algorithm>
#include <variant>

#include "isat/oracle.hpp"
#include "isat/rng.hpp"

using namespace isat;

namespace {

bool sat(const OracleResult& r) { return std::holds_alternative<OracleSat>(r); }

// Plain enumeration over the full grid, no pruning or reduction.
bool naive_sat(const Formula& f, const CandidateGrid& grid) {
  const std::size_t n = f.num_vars();
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Assignment cur(n);
    for (Var v = 0; v < n; ++v) cur.set_permanent(v, grid[v][idx[v]]);
    if (verify(f, cur)) return true;
    std::size_t v = 0;
    while (v < n && ++idx[v] == grid[v].size()) idx[v++] = 0;
    if (v == n) return false;
  }
}

}  // namespace

TEST_CASE("oracle examples") {
  CHECK(sat(brute_decide(Formula(0))));
  CHECK(sat(brute_decide(Formula(4))));

  Formula one(1);
  one.add_clause(Clause{{0, {0.2, 0.3}}});
  const auto r = brute_decide(one);
  REQUIRE(sat(r));
  const double x = std::get<OracleSat>(r).assignment[0];
  CHECK(x >= 0.2);
  CHECK(x <= 0.3);

  Formula with_empty(1);
  with_empty.add_clause(Clause{});
  CHECK_FALSE(sat(brute_decide(with_empty)));
}

TEST_CASE("candidate grid contents") {
  Formula f(3);
  f.add_clause({{0, {0.2, 0.4}}, {1, {0.5, 0.5}}});
  const auto g = candidate_grid(f);
  CHECK(g[0] == std::vector<double>{0.0, 0.1, 0.2, 0.30000000000000004, 0.4, 0.7, 1.0});
  CHECK(g[1] == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(g[2] == std::vector<double>{0.5});
}

TEST_CASE("candidate reduction keeps maximal literal sets") {
  Formula f(1);
  f.add_clause(Clause{{0, {0.2, 0.4}}});
  f.add_clause(Clause{{0, {0.3, 0.6}}});
  const auto g = reduce_candidates(f, candidate_grid(f));
  // Only points in [0.3, 0.4] satisfy both literals; 0.3 comes first.
  CHECK(g[0] == std::vector<double>{0.3});
}

TEST_CASE("oracle size guard") {
  // Eleven pairwise disjoint literals per variable leave eleven undominated
  // candidates each: 11^8 > 1e8.
  Formula f(8);
  for (Var v = 0; v < 8; ++v)
    for (int k = 0; k < 11; ++k) {
      const double a = 0.02 + 0.04 * k;
      f.add_clause(Clause{{v, {a, a + 0.01}}});
    }
  CHECK_THROWS_AS(brute_decide(f), OracleTooLarge);
}

TEST_CASE("oracle agrees with naive enumeration and its answers verify") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Rng rng(split_seed(5, seed));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(3, 4)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 9)(rng);
    const Formula f = generate_formula(n, m, 2 + seed % 2, split_seed(6, seed));
    const auto grid = candidate_grid(f);
    const auto r = brute_decide(f, grid);
    CHECK(sat(r) == naive_sat(f, grid));
    if (sat(r)) CHECK(verify(f, std::get<OracleSat>(r).assignment));
  }
}

TEST_CASE("extra candidate points never flip the answer") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = generate_formula(4, 12, 2 + seed % 2, split_seed(8, seed));
    auto grid = candidate_grid(f);
    const bool base = sat(brute_decide(f, grid));
    Rng rng(split_seed(9, seed));
    for (auto& g : grid) {
      for (int k = 0; k < 10; ++k) g.push_back(uniform01(rng));
      std::sort(g.begin(), g.end());
    }
    CHECK(sat(brute_decide(f, grid)) == base);
  }
}
