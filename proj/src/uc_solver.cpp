#include "isat/uc_solver.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "isat/two_isat.hpp"

namespace isat::uc {

std::string_view to_string(Color c) noexcept {
  switch (c) {
    case Color::Uncolored: return "uncolored";
    case Color::Black: return "black";
    case Color::Red: return "red";
    case Color::Blue: return "blue";
    case Color::Pink: return "pink";
    case Color::Turquoise: return "turquoise";
    case Color::None: return "none";
  }
  return "?";
}

std::string_view to_string(ZenCause c) noexcept {
  switch (c) {
    case ZenCause::ThreeClause: return "three_clause";
    case ZenCause::Cycle: return "cycle";
    case ZenCause::BlueIncident: return "blue_incident";
    case ZenCause::TripleHit: return "triple_hit";
    case ZenCause::PhaseIICollision: return "phase2_collision";
  }
  return "?";
}

Color table_color(std::size_t size, unsigned exposed_mask, const std::array<bool, 3>& exposed_true) noexcept {
  const unsigned mask = exposed_mask & ((1u << size) - 1u);
  const auto exposed = static_cast<std::size_t>(std::popcount(mask));
  const std::size_t unexposed = size - exposed;
  bool any_true = false;
  for (std::size_t i = 0; i < size; ++i)
    if ((mask >> i) & 1u) any_true = any_true || exposed_true[i];

  if (size == 1 && unexposed == 1) return Color::Red;
  if (unexposed == size) return Color::Uncolored;
  if (unexposed == 0) return Color::Black;
  if (unexposed == 1) return any_true ? Color::Blue : Color::Red;
  return any_true ? Color::Turquoise : Color::Pink;
}

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

struct WClause {
  std::array<Literal, 3> lit{};
  std::uint8_t size = 0;
  std::uint8_t exposed = 0;
  Color color = Color::Uncolored;
  bool alive = true;

  [[nodiscard]] int position(Var v) const noexcept {
    for (int i = 0; i < size; ++i)
      if (lit[static_cast<std::size_t>(i)].var == v) return i;
    return -1;
  }
};

struct Occurrence {
  ClauseId clause;
  int pos;
};

enum class Phase { I, II };

}  // namespace

struct UcSolver::Impl {
  Formula original;
  SolverOptions opt;
  Rng rng;
  Observer observer;
  const UcSolver* owner = nullptr;

  std::vector<WClause> cl;
  std::vector<std::vector<ClauseId>> occ;
  Assignment asg;
  std::vector<char> used_flag;
  std::vector<Var> unused;
  std::vector<std::uint32_t> unused_pos;
  std::array<std::size_t, 4> Y{};
  RunStats st;
  std::vector<char> tracked;

  // Inner-loop run state.
  Phase phase = Phase::I;
  bool zen = false;
  InnerReport report;
  std::vector<ClauseId> red;
  std::vector<std::uint32_t> red_pos;
  std::vector<ClauseId> touched;
  std::vector<char> is_touched;
  std::vector<Var> run_vars;
  std::size_t colored3 = 0;

  // Decision graph G (Phase I): union-find for cycle counting plus adjacency
  // for the repair path.
  std::vector<std::uint32_t> dsu;
  std::vector<std::vector<std::pair<Var, ClauseId>>> adj;
  std::vector<Var> g_vertices;
  std::size_t cycles = 0;

  Impl(const Formula& f, std::uint64_t seed, SolverOptions o)
      : original(f), opt(std::move(o)), rng(make_rng(seed, 0)) {
    const std::size_t n = f.num_vars();
    const std::size_t m = f.num_clauses();
    cl.resize(m);
    occ.resize(n);
    for (ClauseId id = 0; id < m; ++id) {
      const Clause& c = f.clause(id);
      WClause& w = cl[id];
      w.size = static_cast<std::uint8_t>(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) {
        w.lit[i] = c[i];
        occ[c[i].var].push_back(id);
      }
      ++Y[c.size()];
    }
    st.empty_clauses = Y[0];
    asg = Assignment(n);
    used_flag.assign(n, 0);
    unused.resize(n);
    unused_pos.resize(n);
    for (Var v = 0; v < n; ++v) {
      unused[v] = v;
      unused_pos[v] = v;
    }
    red_pos.assign(m, kNone);
    is_touched.assign(m, 0);
    dsu.assign(n, kNone);
    adj.resize(n);
    tracked.assign(opt.track_fractions.size(), 0);
  }

  // ---- exposure and colors -------------------------------------------------

  void touch(ClauseId id) {
    if (!is_touched[id]) {
      is_touched[id] = 1;
      touched.push_back(id);
    }
  }

  void expose(ClauseId id, int pos) {
    WClause& c = cl[id];
    const auto bit = static_cast<std::uint8_t>(1u << pos);
    if (c.exposed & bit) throw std::logic_error("literal exposed twice in one inner-loop run");
    c.exposed |= bit;
    touch(id);
  }

  /// The only way decision steps read an interval.
  const Interval& exposed_sign(ClauseId id, int pos) const {
    const WClause& c = cl[id];
    if (!((c.exposed >> pos) & 1u)) throw std::logic_error("read of an unexposed literal");
    return c.lit[static_cast<std::size_t>(pos)].sign;
  }

  Color compute_color(ClauseId id) const {
    const WClause& c = cl[id];
    std::array<bool, 3> truth{};
    for (int i = 0; i < c.size; ++i)
      if ((c.exposed >> i) & 1u) {
        const Var v = c.lit[static_cast<std::size_t>(i)].var;
        truth[static_cast<std::size_t>(i)] = asg.has(v) && exposed_sign(id, i).contains(asg[v]);
      }
    return table_color(c.size, c.exposed, truth);
  }

  static bool counts_as_colored3(const WClause& c) {
    return c.size == 3 && (c.color == Color::Red || c.color == Color::Blue || c.color == Color::Black);
  }

  void set_color(ClauseId id, Color color) {
    WClause& c = cl[id];
    if (counts_as_colored3(c)) --colored3;
    if (c.color == Color::Red && red_pos[id] != kNone) {
      const std::uint32_t p = red_pos[id];
      red[p] = red.back();
      red_pos[red[p]] = p;
      red.pop_back();
      red_pos[id] = kNone;
    }
    c.color = color;
    if (counts_as_colored3(c)) ++colored3;
    if (color == Color::Red) {
      red_pos[id] = static_cast<std::uint32_t>(red.size());
      red.push_back(id);
    }
    touch(id);
  }

  void recolor(ClauseId id) { set_color(id, compute_color(id)); }

  void validate_colors() {
    for (ClauseId id : touched) {
      const WClause& c = cl[id];
      if (!c.alive) continue;
      // Recount from scratch, independently of the incremental update.
      std::size_t unexposed = 0;
      bool any_true = false;
      for (int i = 0; i < c.size; ++i) {
        if (!((c.exposed >> i) & 1u)) {
          ++unexposed;
          continue;
        }
        const Literal& l = c.lit[static_cast<std::size_t>(i)];
        if (!asg.has(l.var)) throw std::logic_error("exposed literal on an unvalued variable");
        any_true = any_true || l.sign.contains(asg[l.var]);
      }
      Color want;
      if (unexposed == 1 && c.size == 1) want = Color::Red;
      else if (unexposed == c.size) want = Color::Uncolored;
      else if (unexposed == 0) want = Color::Black;
      else if (unexposed == 1) want = any_true ? Color::Blue : Color::Red;
      else want = any_true ? Color::Turquoise : Color::Pink;
      if (want != c.color)
        throw std::logic_error("stored color " + std::string(to_string(c.color)) +
                               " disagrees with recomputed " + std::string(to_string(want)));
      if ((c.color == Color::Red) != (red_pos[id] != kNone))
        throw std::logic_error("red set out of sync");
    }
    if (opt.full_color_validation) {
      std::size_t reds = 0;
      for (ClauseId id = 0; id < cl.size(); ++id) {
        const WClause& c = cl[id];
        if (c.color == Color::Red) ++reds;
        if (is_touched[id] || !c.alive) continue;
        if (c.exposed != 0 || c.color != Color::Uncolored)
          throw std::logic_error("untouched clause carries run state");
      }
      if (reds != red.size()) throw std::logic_error("red count out of sync");
    }
    ++st.color_checks;
    if (observer) observer(*owner);
  }

  // ---- decision graph --------------------------------------------------------

  std::uint32_t find(std::uint32_t v) {
    while (dsu[v] != v) {
      dsu[v] = dsu[dsu[v]];
      v = dsu[v];
    }
    return v;
  }

  void g_add_vertex(Var v) {
    if (dsu[v] == kNone) {
      dsu[v] = v;
      g_vertices.push_back(v);
    }
  }

  void g_add_edge(Var u, Var w, ClauseId id) {
    g_add_vertex(u);
    g_add_vertex(w);
    const std::uint32_t ru = find(u), rw = find(w);
    if (ru == rw) ++cycles;
    else dsu[ru] = rw;
    adj[u].push_back({w, id});
    adj[w].push_back({u, id});
  }

  // ---- run bookkeeping -------------------------------------------------------

  std::vector<Occurrence> occurrences(Var v) const {
    std::vector<Occurrence> out;
    for (ClauseId id : occ[v]) {
      const WClause& c = cl[id];
      if (!c.alive) continue;
      const int p = c.position(v);
      if (p >= 0) out.push_back({id, p});
    }
    return out;
  }

  void reset_run_colors() {
    for (ClauseId id : touched) {
      WClause& c = cl[id];
      c.exposed = 0;
      c.color = c.alive ? Color::Uncolored : Color::None;
      red_pos[id] = kNone;
      is_touched[id] = 0;
    }
    touched.clear();
    red.clear();
    colored3 = 0;
  }

  void reset_graph() {
    for (Var v : g_vertices) {
      dsu[v] = kNone;
      adj[v].clear();
    }
    g_vertices.clear();
    cycles = 0;
  }

  void mark_used(Var v) {
    if (used_flag[v]) return;
    used_flag[v] = 1;
    const std::uint32_t p = unused_pos[v];
    unused[p] = unused.back();
    unused_pos[unused[p]] = p;
    unused.pop_back();
  }

  /// Apply the now-permanent values of `vars` to every live
  /// clause containing them, in clause-id order. Returns clauses left with one literal.
  std::vector<ClauseId> commit(const std::vector<Var>& vars) {
    std::vector<ClauseId> ids;
    for (Var v : vars) {
      mark_used(v);
      for (ClauseId id : occ[v])
        if (cl[id].alive) ids.push_back(id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

    std::vector<ClauseId> units;
    for (ClauseId id : ids) {
      WClause& c = cl[id];
      bool satisfied = false;
      std::array<Literal, 3> keep{};
      std::uint8_t kept = 0;
      for (int i = 0; i < c.size; ++i) {
        const Literal& l = c.lit[static_cast<std::size_t>(i)];
        if (asg.status(l.var) == ValueStatus::Permanent) {
          if (l.holds(asg[l.var])) {
            satisfied = true;
            break;
          }
        } else {
          keep[kept++] = l;
        }
      }
      --Y[c.size];
      if (satisfied) {
        c.alive = false;
        c.color = Color::None;
        continue;
      }
      c.lit = keep;
      c.size = kept;
      ++Y[kept];
      if (kept == 0) {
        ++st.empty_clauses;
        ++report.empty_clauses;
      } else if (kept == 1) {
        units.push_back(id);
      }
    }
    return units;
  }

  void go_zen(ZenCause cause) {
    zen = true;
    report.zen = true;
    report.zen_causes.push_back(cause);
    ++st.zen_events[static_cast<std::size_t>(cause)];
  }

  // ---- inner loop ---------------------------------------------------------------

  struct Fatality {
    ClauseId cj;
    ClauseId c_prime;
    int pos_prime;
    Var xj;
  };

  /// Main inner loop. Returns a repair request in the Phase-I repair
  /// situation, otherwise runs until no red clause remains.
  std::optional<Fatality> service_red_clauses() {
    while (true) {
      validate_colors();
      if (red.empty()) return std::nullopt;

      const ClauseId cj = red[std::uniform_int_distribution<std::size_t>(0, red.size() - 1)(rng)];
      int pj = -1;
      for (int i = 0; i < cl[cj].size; ++i)
        if (!((cl[cj].exposed >> i) & 1u)) pj = i;
      if (pj < 0) throw std::logic_error("red clause without an unexposed literal");
      const Var xj = cl[cj].lit[static_cast<std::size_t>(pj)].var;
      expose(cj, pj);
      if (phase == Phase::I) {
        ++st.inner_iterations_phase1;
        ++report.phase1_iterations;
      } else {
        ++st.inner_iterations_phase2;
        ++report.phase2_iterations;
      }

      const std::vector<Occurrence> occs = occurrences(xj);
      std::vector<Occurrence> other_red;
      std::vector<Occurrence> uncolored;
      bool blue_hit = false;
      // occurrences in colored clauses
      for (const Occurrence& o : occs) {
        if (o.clause == cj) continue;
        const Color col = cl[o.clause].color;
        if (col == Color::Uncolored) {
          uncolored.push_back(o);
          continue;
        }
        if (col == Color::Red) other_red.push_back(o);
        if (col == Color::Blue) blue_hit = true;
        expose(o.clause, o.pos);
      }

      // another red clause wants x_j too
      if (!other_red.empty()) {
        if (phase == Phase::II) {
          go_zen(ZenCause::PhaseIICollision);
        } else {
          std::optional<ZenCause> cause;
          if (colored3 > 0) cause = ZenCause::ThreeClause;
          else if (cycles > 1) cause = ZenCause::Cycle;  // a cycle besides the one C_j and C' close
          else if (blue_hit) cause = ZenCause::BlueIncident;
          else if (other_red.size() >= 2) cause = ZenCause::TripleHit;
          if (cause) go_zen(*cause);
          else if (!zen) return Fatality{cj, other_red[0].clause, other_red[0].pos, xj};
        }
      }

      // uncolored occurrences; 2-clauses become edges of G
      for (const Occurrence& o : uncolored) {
        expose(o.clause, o.pos);
        const WClause& c = cl[o.clause];
        if (phase == Phase::I && c.size == 2) g_add_edge(xj, c.lit[static_cast<std::size_t>(1 - o.pos)].var, o.clause);
      }

      asg.set_tentative(xj, bar_x(exposed_sign(cj, pj)));
      run_vars.push_back(xj);
      recolor(cj);
      for (const Occurrence& o : occs)
        if (o.clause != cj) recolor(o.clause);
    }
  }

  std::vector<Var> path_to(Var x0, Var target, ClauseId forbidden, std::vector<ClauseId>& edges) const {
    std::unordered_map<Var, std::pair<Var, ClauseId>> parent;
    parent[x0] = {x0, kNone};
    std::deque<Var> queue{x0};
    while (!queue.empty() && !parent.count(target)) {
      const Var v = queue.front();
      queue.pop_front();
      for (const auto& [w, id] : adj[v]) {
        if (id == forbidden || parent.count(w)) continue;
        parent[w] = {v, id};
        queue.push_back(w);
      }
    }
    if (!parent.count(target)) throw std::logic_error("repair target not reachable in G");
    std::vector<Var> path{target};
    edges.clear();
    for (Var v = target; v != x0; v = parent[v].first) {
      edges.push_back(parent[v].second);
      path.push_back(parent[v].first);
    }
    std::reverse(path.begin(), path.end());
    std::reverse(edges.begin(), edges.end());
    return path;
  }

  /// Path repair followed by Phase II.
  void repair_and_phase_two(Var x0, const Fatality& f) {
    std::vector<ClauseId> edges;
    const std::vector<Var> path = path_to(x0, f.xj, f.c_prime, edges);
    if (edges.empty() || edges.back() != f.cj)
      throw std::logic_error("repair path does not end in the serviced clause");

    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      const ClauseId e = edges[i];
      const int p = cl[e].position(path[i]);
      asg.set_permanent(path[i], bar_x(exposed_sign(e, p)));
    }
    asg.set_permanent(f.xj, bar_x(exposed_sign(f.c_prime, f.pos_prime)));
    for (Var v : run_vars)
      if (asg.status(v) == ValueStatus::Tentative) asg.make_permanent(v);

    std::vector<Var> vars = run_vars;
    vars.push_back(f.xj);
    reset_run_colors();
    reset_graph();
    const std::vector<ClauseId> units = commit(vars);
    run_vars.clear();
    ++st.repairs;
    report.outcome = InnerOutcome::Repaired;
    report.repair_path = path;

    phase = Phase::II;
    for (ClauseId id : units)
      if (cl[id].alive && cl[id].size == 1) set_color(id, Color::Red);
    if (service_red_clauses()) throw std::logic_error("repair requested in Phase II");
    finish_run();
  }

  void finish_run() {
    for (Var v : run_vars) asg.make_permanent(v);
    std::vector<Var> vars = std::move(run_vars);
    run_vars.clear();
    reset_run_colors();
    reset_graph();
    commit(vars);
  }

  InnerReport run_inner(Var x0) {
    report = InnerReport{};
    zen = false;
    phase = Phase::I;

    asg.set_tentative(x0, 0.5);
    run_vars.push_back(x0);
    g_add_vertex(x0);
    const std::vector<Occurrence> occs = occurrences(x0);
    for (const Occurrence& o : occs) {
      expose(o.clause, o.pos);
      const WClause& c = cl[o.clause];
      if (c.size == 2) g_add_edge(x0, c.lit[static_cast<std::size_t>(1 - o.pos)].var, o.clause);
    }
    for (const Occurrence& o : occs) recolor(o.clause);
    report.initial_red = red.size();

    if (auto fatality = service_red_clauses()) repair_and_phase_two(x0, *fatality);
    else finish_run();

    if (zen) ++st.zen_runs;
    if (report.empty_clauses > 0 && !zen) ++st.go_zen_violations;
    return report;
  }

  // ---- outer loop ----------------------------------------------------------------

  [[nodiscard]] bool outer_condition() const {
    return !unused.empty() &&
           static_cast<double>(Y[2] + Y[3]) > opt.c_prime * static_cast<double>(unused.size());
  }

  InnerReport outer_step(Var x0) {
    if (x0 >= used_flag.size() || used_flag[x0]) throw std::invalid_argument("free variable must be unused");
    const std::size_t X0 = unused.size(), Y20 = Y[2], Y30 = Y[3];
    if (Y[1] > 0) ++st.unit_clause_violations;
    InnerReport r = run_inner(x0);
    ++st.outer_iterations;
    if (unused.size() >= X0 || Y[3] > Y30) ++st.monotonicity_violations;
    if (opt.record_iterations)
      st.iterations.push_back({X0, Y20, Y30,
                               static_cast<long long>(unused.size()) - static_cast<long long>(X0),
                               static_cast<long long>(Y[2]) - static_cast<long long>(Y20),
                               static_cast<long long>(Y[3]) - static_cast<long long>(Y30),
                               r.initial_red});
    const double n = static_cast<double>(used_flag.size());
    for (std::size_t i = 0; i < tracked.size(); ++i)
      if (!tracked[i] && static_cast<double>(unused.size()) <= opt.track_fractions[i] * n) {
        tracked[i] = 1;
        st.track.push_back({opt.track_fractions[i], unused.size(), Y[2], Y[3]});
      }
    return r;
  }

  InnerReport outer_step_random() {
    if (unused.empty()) throw std::logic_error("no unused variable left");
    const Var x0 = unused[std::uniform_int_distribution<std::size_t>(0, unused.size() - 1)(rng)];
    return outer_step(x0);
  }

  SolveResult solve() {
    while (outer_condition()) outer_step_random();
    st.final_X = unused.size();
    st.final_Y2 = Y[2];
    st.final_Y3 = Y[3];

    SolveResult result;
    if (Y[0] > 0) {
      result.cause = GaveUpCause::EmptyClause;
      result.stats = st;
      return result;
    }
    if (Y[1] > 0) throw std::logic_error("unit clause left after the outer loop");

    // (o-4): drop one literal uar from every 3-clause.
    Formula two(original.num_vars());
    for (const WClause& c : cl) {
      if (!c.alive) continue;
      if (c.size == 2) {
        two.add_clause(Clause{c.lit[0], c.lit[1]});
      } else if (c.size == 3) {
        const auto drop = std::uniform_int_distribution<int>(0, 2)(rng);
        std::array<Literal, 2> keep{};
        for (int i = 0, k = 0; i < 3; ++i)
          if (i != drop) keep[static_cast<std::size_t>(k++)] = c.lit[static_cast<std::size_t>(i)];
        two.add_clause(Clause(keep));
      }
    }

    // (o-5)
    const TwoIsatResult decided = decide(two);
    if (std::holds_alternative<TwoUnsat>(decided)) {
      result.cause = GaveUpCause::TwoIsatUnsat;
      result.stats = st;
      return result;
    }
    const Assignment& rest = std::get<TwoSat>(decided).assignment;
    Assignment merged(original.num_vars());
    for (Var v = 0; v < original.num_vars(); ++v)
      merged.set_permanent(v, asg.status(v) == ValueStatus::Permanent ? asg[v] : rest[v]);
    if (!verify(original, merged)) throw std::logic_error("solver produced an assignment that fails verify");

    result.outcome = Outcome::Sat;
    result.assignment = std::move(merged);
    result.stats = st;
    return result;
  }
};

UcSolver::UcSolver(const Formula& formula, std::uint64_t seed, SolverOptions options)
    : impl_(std::make_unique<Impl>(formula, seed, std::move(options))) {
  impl_->owner = this;
}
UcSolver::~UcSolver() = default;
UcSolver::UcSolver(UcSolver&& other) noexcept : impl_(std::move(other.impl_)) {
  if (impl_) impl_->owner = this;
}
UcSolver& UcSolver::operator=(UcSolver&& other) noexcept {
  impl_ = std::move(other.impl_);
  if (impl_) impl_->owner = this;
  return *this;
}

void UcSolver::set_observer(Observer observer) { impl_->observer = std::move(observer); }
SolveResult UcSolver::solve() { return impl_->solve(); }
bool UcSolver::outer_condition() const { return impl_->outer_condition(); }
InnerReport UcSolver::outer_step() { return impl_->outer_step_random(); }
InnerReport UcSolver::outer_step(Var x0) { return impl_->outer_step(x0); }
std::size_t UcSolver::X() const { return impl_->unused.size(); }
std::size_t UcSolver::Y(std::size_t length) const { return impl_->Y.at(length); }
bool UcSolver::used(Var v) const { return impl_->used_flag.at(v) != 0; }
const Assignment& UcSolver::assignment() const { return impl_->asg; }
const RunStats& UcSolver::stats() const { return impl_->st; }

std::optional<Clause> UcSolver::current_clause(ClauseId id) const {
  const WClause& c = impl_->cl.at(id);
  if (!c.alive) return std::nullopt;
  return Clause(std::span<const Literal>(c.lit.data(), c.size));
}

Color UcSolver::color(ClauseId id) const { return impl_->cl.at(id).color; }

bool UcSolver::exposed(ClauseId id, std::size_t pos) const {
  return ((impl_->cl.at(id).exposed >> pos) & 1u) != 0;
}

SolveResult solve(const Formula& formula, std::uint64_t seed, SolverOptions options) {
  return UcSolver(formula, seed, std::move(options)).solve();
}

}  // namespace isat::uc
