#include "isat/oracle.hpp"

#include <algorithm>

namespace isat {

CandidateGrid candidate_grid(const Formula& formula) {
  std::vector<std::vector<double>> ends(formula.num_vars());
  for (const auto& clause : formula.clauses())
    for (const auto& lit : clause.literals()) {
      ends[lit.var].push_back(lit.sign.lo);
      ends[lit.var].push_back(lit.sign.hi);
    }

  CandidateGrid grid(formula.num_vars());
  for (Var v = 0; v < formula.num_vars(); ++v) {
    auto& e = ends[v];
    if (e.empty()) {
      grid[v] = {0.5};
      continue;
    }
    e.push_back(0.0);
    e.push_back(1.0);
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
    auto& g = grid[v];
    for (std::size_t i = 0; i < e.size(); ++i) {
      g.push_back(e[i]);
      if (i + 1 < e.size()) g.push_back(e[i] + (e[i + 1] - e[i]) / 2.0);
    }
  }
  return grid;
}

CandidateGrid reduce_candidates(const Formula& formula, const CandidateGrid& grid) {
  const std::size_t n = formula.num_vars();
  if (grid.size() != n) throw std::invalid_argument("grid size does not match variable count");
  std::vector<std::vector<Interval>> signs(n);
  for (const auto& clause : formula.clauses())
    for (const auto& lit : clause.literals()) signs[lit.var].push_back(lit.sign);

  CandidateGrid out(n);
  for (Var v = 0; v < n; ++v) {
    const auto& cand = grid[v];
    std::vector<std::vector<bool>> sig;
    sig.reserve(cand.size());
    for (double x : cand) {
      std::vector<bool> s(signs[v].size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = signs[v][i].contains(x);
      sig.push_back(std::move(s));
    }
    auto subset = [&](std::size_t a, std::size_t b) {
      for (std::size_t i = 0; i < sig[a].size(); ++i)
        if (sig[a][i] && !sig[b][i]) return false;
      return true;
    };
    for (std::size_t a = 0; a < cand.size(); ++a) {
      bool keep = true;
      for (std::size_t b = 0; b < cand.size() && keep; ++b) {
        if (a == b || !subset(a, b)) continue;
        // b satisfies everything a does; drop a unless they tie and a comes first.
        if (!subset(b, a) || b < a) keep = false;
      }
      if (keep) out[v].push_back(cand[a]);
    }
  }
  return out;
}

OracleResult brute_decide(const Formula& formula, const CandidateGrid& full_grid) {
  const std::size_t n = formula.num_vars();
  const CandidateGrid grid = reduce_candidates(formula, full_grid);

  double product = 1.0;
  for (const auto& g : grid) {
    if (g.empty()) throw std::invalid_argument("empty candidate list");
    product *= static_cast<double>(g.size());
  }
  if (product > kOracleMaxGridProduct)
    throw OracleTooLarge("candidate grid has " + std::to_string(product) + " points (limit 1e8)");

  // Each clause is checked once its highest variable is assigned.
  std::vector<std::vector<std::size_t>> closes_at(n);
  for (std::size_t c = 0; c < formula.num_clauses(); ++c) {
    const Clause& clause = formula.clause(c);
    if (clause.empty()) return OracleUnsat{};
    Var last = 0;
    for (const auto& lit : clause.literals()) last = std::max(last, lit.var);
    closes_at[last].push_back(c);
  }

  std::vector<double> value(n, 0.0);
  std::vector<std::size_t> choice(n, 0);
  auto consistent = [&](std::size_t v) {
    for (std::size_t c : closes_at[v]) {
      const Clause& clause = formula.clause(c);
      bool sat = false;
      for (const auto& lit : clause.literals())
        if (lit.holds(value[lit.var])) {
          sat = true;
          break;
        }
      if (!sat) return false;
    }
    return true;
  };

  // Iterative DFS: depth = next variable to assign.
  std::size_t depth = 0;
  while (true) {
    if (depth == n) {
      Assignment a(n);
      for (Var v = 0; v < n; ++v) a.set_permanent(v, value[v]);
      return OracleSat{std::move(a)};
    }
    bool advanced = false;
    while (choice[depth] < grid[depth].size()) {
      value[depth] = grid[depth][choice[depth]++];
      if (consistent(depth)) {
        advanced = true;
        break;
      }
    }
    if (advanced) {
      ++depth;
      if (depth < n) choice[depth] = 0;
      continue;
    }
    if (depth == 0) return OracleUnsat{};
    --depth;
  }
}

OracleResult brute_decide(const Formula& formula) {
  return brute_decide(formula, candidate_grid(formula));
}

}  // namespace isat
