#include <catch_amalgamated.hpp>

#include <variant>

#include "isat/oracle.hpp"
#include "isat/rng.hpp"
#include "isat/two_isat.hpp"

using namespace isat;

namespace {

Formula unsat_square() {
  const Interval A(0, 0.4), B(0.6, 1), C(0, 0.3), D(0.7, 1);
  Formula f(2);
  f.add_clause({{0, A}, {1, C}});
  f.add_clause({{0, A}, {1, D}});
  f.add_clause({{0, B}, {1, C}});
  f.add_clause({{0, B}, {1, D}});
  return f;
}

bool is_sat(const TwoIsatResult& r) { return std::holds_alternative<TwoSat>(r); }

}  // namespace

TEST_CASE("digraph examples") {
  Formula f(2);
  f.add_clause({{0, {0, 0.2}}, {1, {0.5, 1}}});
  auto g = build_digraph(f);
  CHECK(g.num_vertices() == 4);
  CHECK(g.count(ArcKind::Clause) == 2);
  CHECK(g.count(ArcKind::Disjointness) == 0);
  // (x in I, f) -> (y in J, t) and (y in J, f) -> (x in I, t)
  CHECK(g.arcs()[0] == Arc{1, 2, ArcKind::Clause});
  CHECK(g.arcs()[1] == Arc{3, 0, ArcKind::Clause});

  Formula h = f;
  h.add_clause({{0, {0.3, 0.6}}, {1, {0.5, 1}}});
  g = build_digraph(h);
  CHECK(g.num_literals() == 3);
  CHECK(g.count(ArcKind::Disjointness) == 2);

  Formula twice(2);
  twice.add_clause({{0, {0, 0.2}}, {1, {0.5, 1}}});
  twice.add_clause({{0, {0, 0.2}}, {1, {0.5, 1}}});
  g = build_digraph(twice);
  CHECK(g.num_vertices() == 4);
  CHECK(g.count(ArcKind::Clause) == 4);

  Formula bad(3);
  bad.add_clause({{0, {}}, {1, {}}, {2, {}}});
  CHECK_THROWS_AS(build_digraph(bad), std::invalid_argument);
}

TEST_CASE("touching closed intervals are not disjoint") {
  Formula f(2);
  f.add_clause({{0, {0, 0.3}}, {1, {0, 1}}});
  f.add_clause({{0, {0.3, 0.6}}, {1, {0, 1}}});
  CHECK(build_digraph(f).count(ArcKind::Disjointness) == 0);
}

TEST_CASE("arc kinds follow vertex polarity") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Formula f = generate_formula(8, 20, 2, seed);
    const auto g = build_digraph(f);
    for (const Arc& a : g.arcs()) {
      if (ImplicationDigraph::is_positive(a.from)) {
        CHECK(a.kind == ArcKind::Disjointness);
        CHECK_FALSE(ImplicationDigraph::is_positive(a.to));
      } else {
        CHECK(a.kind == ArcKind::Clause);
        CHECK(ImplicationDigraph::is_positive(a.to));
      }
    }
  }
}

TEST_CASE("no two consecutive disjointness arcs") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto g = build_digraph(generate_formula(6, 15, 2, seed));
    for (const Arc& a : g.arcs()) {
      if (a.kind != ArcKind::Disjointness) continue;
      for (const std::uint32_t next : g.out_arcs(a.to)) CHECK(g.arcs()[next].kind == ArcKind::Clause);
    }
  }
}

TEST_CASE("CSR adjacency lists every arc once") {
  const auto g = build_digraph(generate_formula(30, 60, 2, 3));
  std::size_t total = 0;
  for (std::uint32_t v = 0; v < g.num_vertices(); ++v)
    for (const std::uint32_t a : g.out_arcs(v)) {
      CHECK(g.arcs()[a].from == v);
      ++total;
    }
  CHECK(total == g.arcs().size());
}

TEST_CASE("SCC ids are a reverse topological order") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = build_digraph(generate_formula(20, 30, 2, seed));
    const auto scc = strongly_connected_components(g);
    REQUIRE(scc.component.size() == g.num_vertices());
    for (const Arc& a : g.arcs()) CHECK(scc.component[a.from] >= scc.component[a.to]);
  }
}

TEST_CASE("SCCs on a hand graph") {
  // x in [0,0.2] or y in [0.5,1];  y in [0,0.4] or x in [0.6,1];
  // the two y literals and the two x literals are disjoint.
  Formula f(2);
  f.add_clause({{0, {0, 0.2}}, {1, {0.5, 1}}});
  f.add_clause({{1, {0, 0.4}}, {0, {0.6, 1}}});
  const auto g = build_digraph(f);
  const auto scc = strongly_connected_components(g);
  // (x,[0,.2],t) -> (x,[.6,1],f) -> (y,[0,.4],t) -> (y,[.5,1],f) -> (x,[0,.2],t)
  // Literal k owns vertices 2k (true) and 2k+1 (false), numbered by first appearance.
  CHECK(scc.component[0] == scc.component[7]);
  CHECK(scc.component[7] == scc.component[4]);
  CHECK(scc.component[4] == scc.component[3]);
  CHECK(scc.component[0] != scc.component[1]);
  CHECK(is_sat(decide(f)));
}

TEST_CASE("decide examples") {
  CHECK(is_sat(decide(Formula(3))));
  const auto r = decide(unsat_square());
  REQUIRE(std::holds_alternative<TwoUnsat>(r));
  const auto& w = std::get<TwoUnsat>(r);
  const auto g = build_digraph(unsat_square());
  const auto scc = strongly_connected_components(g);
  CHECK(ImplicationDigraph::is_positive(w.vertex));
  CHECK(scc.component[w.vertex] == scc.component[ImplicationDigraph::complement(w.vertex)]);
  CHECK(scc.component[w.vertex] == w.component);
  CHECK(g.literal_of(w.vertex) == w.literal);
  CHECK(std::holds_alternative<OracleUnsat>(brute_decide(unsat_square())));
}

TEST_CASE("unconstrained variables get 1/2") {
  Formula f(3);
  f.add_clause({{0, {0, 0.1}}, {1, {0.9, 1}}});
  const auto r = decide(f);
  REQUIRE(is_sat(r));
  CHECK(std::get<TwoSat>(r).assignment[2] == 0.5);
}

TEST_CASE("decide agrees with the oracle on 500 random small instances") {
  std::size_t sat = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    Rng rng(split_seed(123, i));
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
    const std::size_t m = std::uniform_int_distribution<std::size_t>(0, 12)(rng);
    const Formula f = generate_formula(n, m, 2, split_seed(123, i + 1000));
    const auto d = decide(f);
    const bool oracle_sat = std::holds_alternative<OracleSat>(brute_decide(f));
    INFO("instance " << i);
    REQUIRE(is_sat(d) == oracle_sat);
    if (is_sat(d)) CHECK(verify(f, std::get<TwoSat>(d).assignment));
    sat += oracle_sat;
  }
  CHECK(sat > 0);
  CHECK(sat < 500);
}

TEST_CASE("decide agrees with the oracle on dense instances") {
  // Few variables and many clauses push a good share of instances to UNSAT.
  std::size_t unsat = 0;
  for (std::uint64_t i = 0; i < 300; ++i) {
    const Formula f = generate_formula(3, 10, 2, split_seed(77, i));
    const auto d = decide(f);
    const bool oracle_sat = std::holds_alternative<OracleSat>(brute_decide(f));
    REQUIRE(is_sat(d) == oracle_sat);
    unsat += !oracle_sat;
  }
  CHECK(unsat > 20);
}

TEST_CASE("random 2-iSAT regimes") {
  const auto rows = phase_experiment(10000, {0.0, 1.2, 2.5}, 100, 5, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].fraction == 1.0);
  CHECK(rows[1].fraction >= 0.95);
  CHECK(rows[2].fraction <= 0.5);
  for (const auto& r : rows) {
    CHECK(r.ci_lo <= r.fraction);
    CHECK(r.fraction <= r.ci_hi);
  }
}

TEST_CASE("phase experiment is thread-count invariant") {
  const auto a = phase_experiment(500, {1.0, 1.6}, 40, 9, 1);
  const auto b = phase_experiment(500, {1.0, 1.6}, 40, 9, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].satisfiable == b[i].satisfiable);
}
