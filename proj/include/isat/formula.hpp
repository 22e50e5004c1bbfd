#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "isat/interval.hpp"

namespace isat {

using Var = std::uint32_t;
using ClauseId = std::uint32_t;

inline constexpr std::size_t kMaxClauseLength = 3;

struct Literal {
  Var var = 0;
  Interval sign;

  [[nodiscard]] bool holds(double value) const noexcept { return sign.contains(value); }
  friend bool operator==(const Literal&, const Literal&) = default;
};

/// Disjunction of at most three literals over distinct variables. The empty
/// clause is representable (it is unsatisfiable) so that solver failures can
/// be recorded and written out.
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::span<const Literal> lits);
  Clause(std::initializer_list<Literal> lits)
      : Clause(std::span<const Literal>(lits.begin(), lits.size())) {}

  [[nodiscard]] std::size_t size() const noexcept { return size_; }
  [[nodiscard]] bool empty() const noexcept { return size_ == 0; }
  [[nodiscard]] std::span<const Literal> literals() const noexcept { return {lits_.data(), size_}; }
  [[nodiscard]] const Literal& operator[](std::size_t i) const noexcept { return lits_[i]; }

  friend bool operator==(const Clause& a, const Clause& b) {
    if (a.size_ != b.size_) return false;
    for (std::size_t i = 0; i < a.size_; ++i)
      if (!(a.lits_[i] == b.lits_[i])) return false;
    return true;
  }

 private:
  std::array<Literal, kMaxClauseLength> lits_{};
  std::uint8_t size_ = 0;
};

/// Immutable-after-construction iSAT formula: variable count plus clause list.
class Formula {
 public:
  Formula() = default;
  explicit Formula(std::size_t num_vars) : num_vars_(num_vars) {}

  /// Appends a clause; throws std::invalid_argument on out-of-range variables.
  void add_clause(Clause clause);

  [[nodiscard]] std::size_t num_vars() const noexcept { return num_vars_; }
  [[nodiscard]] std::size_t num_clauses() const noexcept { return clauses_.size(); }
  [[nodiscard]] const std::vector<Clause>& clauses() const noexcept { return clauses_; }
  [[nodiscard]] const Clause& clause(std::size_t i) const { return clauses_.at(i); }

  /// Number of clauses of length `len` (0..3).
  [[nodiscard]] std::size_t count_length(std::size_t len) const noexcept;

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  std::size_t num_vars_ = 0;
  std::vector<Clause> clauses_;
};

enum class ValueStatus : std::uint8_t { Unset, Tentative, Permanent };

/// Partial map var -> value in [0,1], each entry tentative or permanent.
/// Permanent entries are write-once; only `override_permanent` (the repair
/// path) may replace them.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(std::size_t num_vars)
      : values_(num_vars, 0.0), status_(num_vars, ValueStatus::Unset) {}

  [[nodiscard]] std::size_t num_vars() const noexcept { return values_.size(); }
  [[nodiscard]] ValueStatus status(Var v) const { return status_.at(v); }
  [[nodiscard]] bool has(Var v) const { return status(v) != ValueStatus::Unset; }
  [[nodiscard]] std::optional<double> value(Var v) const {
    if (!has(v)) return std::nullopt;
    return values_[v];
  }
  /// Unchecked read; caller guarantees the entry is set.
  [[nodiscard]] double operator[](Var v) const noexcept { return values_[v]; }

  void set_tentative(Var v, double value);
  void set_permanent(Var v, double value);
  void make_permanent(Var v);
  void override_permanent(Var v, double value);
  void clear(Var v);

 private:
  std::vector<double> values_;
  std::vector<ValueStatus> status_;
};

class IncompleteAssignment : public std::runtime_error {
 public:
  explicit IncompleteAssignment(Var v)
      : std::runtime_error("assignment has no value for variable " + std::to_string(v)), var(v) {}
  Var var;
};

/// True iff every clause has a literal whose variable's value lies in its sign.
[[nodiscard]] bool verify(const Formula& formula, const Assignment& assignment);

/// Uniformly random k-iSAT formula: m clauses, each on k distinct variables
/// drawn uar, each sign an independent random interval. Deterministic in seed.
[[nodiscard]] Formula generate_formula(std::size_t n, std::size_t m, std::size_t k,
                                       std::uint64_t seed);

/// Random formula with m2 2-clauses followed by m3 3-clauses, each drawn as in
/// generate_formula. Used to start runs from a prescribed (X, Y2, Y3) state.
[[nodiscard]] Formula generate_mixed_formula(std::size_t n, std::size_t m2, std::size_t m3,
                                             std::uint64_t seed);

}  // namespace isat
