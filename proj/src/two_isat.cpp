#include "isat/two_isat.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <tuple>

#include "isat/parallel.hpp"
#include "isat/rng.hpp"
#include "isat/stats.hpp"

namespace isat {

std::size_t ImplicationDigraph::count(ArcKind kind) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(arcs_.begin(), arcs_.end(), [kind](const Arc& a) { return a.kind == kind; }));
}

ImplicationDigraph build_digraph(const Formula& formula) {
  ImplicationDigraph g;
  std::map<std::tuple<Var, double, double>, std::uint32_t> index;
  std::vector<std::vector<std::uint32_t>> by_var(formula.num_vars());

  auto literal_id = [&](const Literal& lit) {
    auto [it, inserted] = index.try_emplace({lit.var, lit.sign.lo, lit.sign.hi},
                                            static_cast<std::uint32_t>(g.literals_.size()));
    if (inserted) {
      g.literals_.push_back(lit);
      by_var[lit.var].push_back(it->second);
    }
    return it->second;
  };

  for (const auto& clause : formula.clauses()) {
    if (clause.size() != 2)
      throw std::invalid_argument("2-iSAT digraph needs clauses of length 2, got " +
                                  std::to_string(clause.size()));
    const std::uint32_t a = literal_id(clause[0]);
    const std::uint32_t b = literal_id(clause[1]);
    g.arcs_.push_back({2 * a + 1, 2 * b, ArcKind::Clause});
    g.arcs_.push_back({2 * b + 1, 2 * a, ArcKind::Clause});
  }

  for (const auto& ids : by_var)
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        const auto& I = g.literals_[ids[i]].sign;
        const auto& J = g.literals_[ids[j]].sign;
        if (!I.disjoint(J)) continue;
        g.arcs_.push_back({2 * ids[i], 2 * ids[j] + 1, ArcKind::Disjointness});
        g.arcs_.push_back({2 * ids[j], 2 * ids[i] + 1, ArcKind::Disjointness});
      }

  const std::size_t nv = g.num_vertices();
  g.out_offset_.assign(nv + 1, 0);
  for (const auto& a : g.arcs_) ++g.out_offset_[a.from + 1];
  for (std::size_t v = 0; v < nv; ++v) g.out_offset_[v + 1] += g.out_offset_[v];
  g.out_index_.resize(g.arcs_.size());
  std::vector<std::uint32_t> fill(g.out_offset_.begin(), g.out_offset_.end() - 1);
  for (std::uint32_t i = 0; i < g.arcs_.size(); ++i) g.out_index_[fill[g.arcs_[i].from]++] = i;
  return g;
}

SccResult strongly_connected_components(const ImplicationDigraph& g) {
  constexpr std::uint32_t kUnvisited = UINT32_MAX;
  const auto nv = static_cast<std::uint32_t>(g.num_vertices());
  SccResult r;
  r.component.assign(nv, kUnvisited);
  std::vector<std::uint32_t> index(nv, kUnvisited), low(nv, 0);
  std::vector<std::uint32_t> stack;
  std::vector<bool> on_stack(nv, false);
  struct Frame {
    std::uint32_t v;
    std::uint32_t next_arc;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;

  for (std::uint32_t root = 0; root < nv; ++root) {
    if (index[root] != kUnvisited) continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;

    while (!call.empty()) {
      Frame& f = call.back();
      const auto outs = g.out_arcs(f.v);
      if (f.next_arc < outs.size()) {
        const std::uint32_t w = g.arcs()[outs[f.next_arc++]].to;
        if (index[w] == kUnvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          call.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
        continue;
      }
      const std::uint32_t v = f.v;
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        std::uint32_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          r.component[w] = r.count;
        } while (w != v);
        ++r.count;
      }
    }
  }
  return r;
}

TwoIsatResult decide(const Formula& formula) {
  const ImplicationDigraph g = build_digraph(formula);
  const SccResult scc = strongly_connected_components(g);

  for (std::uint32_t k = 0; k < g.num_literals(); ++k)
    if (scc.component[2 * k] == scc.component[2 * k + 1])
      return TwoUnsat{2 * k, g.literals()[k], scc.component[2 * k]};

  // A vertex is true iff its component comes after its complement's in
  // topological order, i.e. has the smaller Tarjan id.
  std::vector<double> lo(formula.num_vars(), -1.0);
  for (std::uint32_t k = 0; k < g.num_literals(); ++k) {
    if (scc.component[2 * k] >= scc.component[2 * k + 1]) continue;
    const Literal& lit = g.literals()[k];
    lo[lit.var] = std::max(lo[lit.var], lit.sign.lo);
  }

  Assignment a(formula.num_vars());
  for (Var v = 0; v < formula.num_vars(); ++v) a.set_permanent(v, lo[v] < 0.0 ? 0.5 : lo[v]);
  if (!verify(formula, a)) throw std::logic_error("2-iSAT interpretation failed verification");
  return TwoSat{std::move(a)};
}

std::vector<PhaseRow> phase_experiment(std::size_t n, const std::vector<double>& c_grid,
                                       std::size_t trials, std::uint64_t seed, int threads) {
  std::vector<PhaseRow> rows;
  for (std::size_t gi = 0; gi < c_grid.size(); ++gi) {
    const double c = c_grid[gi];
    if (!(c >= 0.0)) throw std::invalid_argument("c must be non-negative");
    const auto m = static_cast<std::size_t>(c * static_cast<double>(n));
    const std::uint64_t grid_seed = split_seed(seed, gi);
    const auto sat = map_indexed(trials, threads, [&](std::size_t t) {
      const Formula f = generate_formula(n, m, 2, split_seed(grid_seed, t));
      return std::holds_alternative<TwoSat>(decide(f)) ? 1 : 0;
    });
    std::size_t count = 0;
    for (int s : sat) count += static_cast<std::size_t>(s);
    const auto w = stats::wilson(count, trials);
    rows.push_back({c, n, trials, count, w.fraction, w.ci_lo, w.ci_hi});
  }
  return rows;
}

}  // namespace isat
