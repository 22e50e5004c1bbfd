#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "isat/formula.hpp"
#include "isat/rng.hpp"

namespace isat::uc {

enum class Color : std::uint8_t { Uncolored, Black, Red, Blue, Pink, Turquoise, None };

[[nodiscard]] std::string_view to_string(Color c) noexcept;

enum class ZenCause : std::uint8_t { ThreeClause, Cycle, BlueIncident, TripleHit, PhaseIICollision };
inline constexpr std::size_t kZenCauses = 5;

[[nodiscard]] std::string_view to_string(ZenCause c) noexcept;

/// Clause color from the exposure mask and the tentative values of the
/// exposed literals' variables (value[i] is read only where bit i is set).
[[nodiscard]] Color table_color(std::size_t size, unsigned exposed_mask,
                                const std::array<bool, 3>& exposed_true) noexcept;

inline constexpr double kDefaultCPrime = 35.0 / 24.0;

struct SolverOptions {
  double c_prime = kDefaultCPrime;
  /// Recheck the color of every clause (not only the touched ones) after each
  /// inner iteration. Quadratic; for tests.
  bool full_color_validation = false;
  /// Keep one IterationRecord, including the Phase-I initial red count per outer iteration.
  bool record_iterations = false;
  /// Record the state when X first drops to or below fraction * n.
  std::vector<double> track_fractions;
};

class UcSolver;
/// Called after the inner loop's initialization and after every inner
/// iteration, while colors are live.
using Observer = std::function<void(const UcSolver&)>;

struct IterationRecord {
  std::size_t X, Y2, Y3;          // at the start of the outer iteration
  long long dX, dY2, dY3;         // change over the iteration
  std::size_t initial_red;        // red clauses created by x0 <- 1/2
};

struct TrackPoint {
  double fraction;
  std::size_t X, Y2, Y3;
};

struct RunStats {
  std::size_t outer_iterations = 0;
  std::size_t inner_iterations_phase1 = 0;
  std::size_t inner_iterations_phase2 = 0;
  std::size_t repairs = 0;
  std::size_t zen_runs = 0;
  std::array<std::size_t, kZenCauses> zen_events{};
  std::size_t empty_clauses = 0;
  // Invariant monitors; all must stay zero.
  std::size_t go_zen_violations = 0;      // empty clause created by a run that never went Zen
  std::size_t unit_clause_violations = 0; // Y1 > 0 at the start of an outer iteration
  std::size_t monotonicity_violations = 0;// X did not decrease or Y3 increased
  std::size_t color_checks = 0;
  // Final state when the outer loop stopped.
  std::size_t final_X = 0, final_Y2 = 0, final_Y3 = 0;
  std::vector<IterationRecord> iterations;
  std::vector<TrackPoint> track;
};

enum class InnerOutcome { Completed, Repaired };

/// What one inner-loop run (Phase I, optional repair and Phase II) did.
struct InnerReport {
  InnerOutcome outcome = InnerOutcome::Completed;
  bool zen = false;
  std::vector<ZenCause> zen_causes;
  std::size_t phase1_iterations = 0;
  std::size_t phase2_iterations = 0;
  std::size_t initial_red = 0;
  std::size_t empty_clauses = 0;
  std::vector<Var> repair_path;     // x0 ... x_k when repaired
};

enum class Outcome { Sat, GaveUp };
enum class GaveUpCause { None, EmptyClause, TwoIsatUnsat };

struct SolveResult {
  Outcome outcome = Outcome::GaveUp;
  GaveUpCause cause = GaveUpCause::None;
  std::optional<Assignment> assignment;  // verified, present iff Sat
  RunStats stats;
};

/// Unit clause with one-level repair. One instance owns one run's working copy
/// of the formula; it is single-threaded and deterministic in (formula, seed).
class UcSolver {
 public:
  UcSolver(const Formula& formula, std::uint64_t seed, SolverOptions options = {});
  void set_observer(Observer observer);
  ~UcSolver();
  UcSolver(UcSolver&&) noexcept;
  UcSolver& operator=(UcSolver&&) noexcept;

  /// Whole algorithm: outer loop, literal drop, 2-iSAT, merge and verify.
  [[nodiscard]] SolveResult solve();

  /// True while Y2 + Y3 > c' X.
  [[nodiscard]] bool outer_condition() const;
  /// One outer iteration on a variable chosen uar among the unused ones.
  InnerReport outer_step();
  /// One outer iteration with a caller-chosen free variable (must be unused).
  InnerReport outer_step(Var x0);

  [[nodiscard]] std::size_t X() const;
  /// Number of live clauses of the given length; length 0 counts empty clauses.
  [[nodiscard]] std::size_t Y(std::size_t length) const;
  [[nodiscard]] bool used(Var v) const;
  [[nodiscard]] const Assignment& assignment() const;
  /// Current literals of a clause, or nullopt once it has been satisfied and deleted.
  [[nodiscard]] std::optional<Clause> current_clause(ClauseId id) const;
  /// Color as of the end of the last inner iteration (None for deleted clauses,
  /// Uncolored between inner-loop runs).
  [[nodiscard]] Color color(ClauseId id) const;
  [[nodiscard]] bool exposed(ClauseId id, std::size_t pos) const;
  [[nodiscard]] const RunStats& stats() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Convenience wrapper: UcSolver(formula, seed, options).solve().
[[nodiscard]] SolveResult solve(const Formula& formula, std::uint64_t seed, SolverOptions options = {});

}  // namespace isat::uc
