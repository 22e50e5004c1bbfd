#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "isat/formula.hpp"

namespace isat {

enum class ArcKind : std::uint8_t { Clause, Disjointness };

struct Arc {
  std::uint32_t from;
  std::uint32_t to;
  ArcKind kind;
  friend bool operator==(const Arc&, const Arc&) = default;
};

/// Implication digraph of a 2-iSAT formula. Every distinct literal (variable
/// plus bit-identical interval) gets the vertex pair 2k (true) / 2k+1 (false).
class ImplicationDigraph {
 public:
  [[nodiscard]] std::size_t num_literals() const noexcept { return literals_.size(); }
  [[nodiscard]] std::size_t num_vertices() const noexcept { return 2 * literals_.size(); }
  [[nodiscard]] const std::vector<Literal>& literals() const noexcept { return literals_; }
  [[nodiscard]] const Literal& literal_of(std::uint32_t vertex) const { return literals_.at(vertex / 2); }
  [[nodiscard]] static constexpr bool is_positive(std::uint32_t vertex) noexcept { return vertex % 2 == 0; }
  [[nodiscard]] static constexpr std::uint32_t complement(std::uint32_t vertex) noexcept { return vertex ^ 1u; }

  [[nodiscard]] const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  [[nodiscard]] std::size_t count(ArcKind kind) const noexcept;

  /// Outgoing arc indices per vertex (CSR).
  [[nodiscard]] std::span<const std::uint32_t> out_arcs(std::uint32_t vertex) const {
    return {out_index_.data() + out_offset_[vertex], out_offset_[vertex + 1] - out_offset_[vertex]};
  }

 private:
  friend ImplicationDigraph build_digraph(const Formula& formula);
  std::vector<Literal> literals_;
  std::vector<Arc> arcs_;
  std::vector<std::uint32_t> out_offset_;
  std::vector<std::uint32_t> out_index_;
};

/// Throws std::invalid_argument unless every clause has exactly two literals.
[[nodiscard]] ImplicationDigraph build_digraph(const Formula& formula);

/// Strongly connected components (iterative Tarjan). Component ids are
/// assigned in reverse topological order of the condensation: if u -> v then
/// comp[u] >= comp[v].
struct SccResult {
  std::vector<std::uint32_t> component;
  std::uint32_t count = 0;
};
[[nodiscard]] SccResult strongly_connected_components(const ImplicationDigraph& g);

struct TwoSat {
  Assignment assignment;
};
struct TwoUnsat {
  std::uint32_t vertex;  // positive vertex of the complementary pair
  Literal literal;
  std::uint32_t component;
};
using TwoIsatResult = std::variant<TwoSat, TwoUnsat>;

/// Exact 2-iSAT decision. On Sat the returned assignment is total and has been
/// verified; variables that no true literal constrains get 1/2.
[[nodiscard]] TwoIsatResult decide(const Formula& formula);

struct PhaseRow {
  double c;
  std::size_t n;
  std::size_t trials;
  std::size_t satisfiable;
  double fraction;
  double ci_lo;
  double ci_hi;
};

/// Satisfiable fraction of random 2-iSAT formulas with floor(c*n) clauses.
/// Trial t of grid point g uses seed split_seed(split_seed(seed, g), t).
[[nodiscard]] std::vector<PhaseRow> phase_experiment(std::size_t n, const std::vector<double>& c_grid,
                                                     std::size_t trials, std::uint64_t seed,
                                                     int threads);

}  // namespace isat
