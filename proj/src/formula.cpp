#include "isat/formula.hpp"

#include <algorithm>
#include <string>

#include "isat/interval_math.hpp"
#include "isat/rng.hpp"

namespace isat {

Clause::Clause(std::span<const Literal> lits) {
  if (lits.size() > kMaxClauseLength)
    throw std::invalid_argument("clause has " + std::to_string(lits.size()) +
                                " literals, at most 3 allowed");
  for (std::size_t i = 0; i < lits.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j)
      if (lits[i].var == lits[j].var)
        throw std::invalid_argument("variable " + std::to_string(lits[i].var) +
                                    " repeated within a clause");
    lits_[i] = lits[i];
  }
  size_ = static_cast<std::uint8_t>(lits.size());
}

void Formula::add_clause(Clause clause) {
  for (const auto& lit : clause.literals())
    if (lit.var >= num_vars_)
      throw std::invalid_argument("variable " + std::to_string(lit.var) + " out of range (n = " +
                                  std::to_string(num_vars_) + ")");
  clauses_.push_back(clause);
}

std::size_t Formula::count_length(std::size_t len) const noexcept {
  return static_cast<std::size_t>(std::count_if(
      clauses_.begin(), clauses_.end(), [len](const Clause& c) { return c.size() == len; }));
}

void Assignment::set_tentative(Var v, double value) {
  if (status_.at(v) == ValueStatus::Permanent)
    throw std::logic_error("cannot make permanent variable " + std::to_string(v) + " tentative");
  values_[v] = value;
  status_[v] = ValueStatus::Tentative;
}

void Assignment::set_permanent(Var v, double value) {
  if (status_.at(v) == ValueStatus::Permanent)
    throw std::logic_error("variable " + std::to_string(v) + " is already permanent");
  values_[v] = value;
  status_[v] = ValueStatus::Permanent;
}

void Assignment::make_permanent(Var v) {
  if (status_.at(v) != ValueStatus::Tentative)
    throw std::logic_error("variable " + std::to_string(v) + " has no tentative value");
  status_[v] = ValueStatus::Permanent;
}

void Assignment::override_permanent(Var v, double value) {
  values_.at(v) = value;
  status_[v] = ValueStatus::Permanent;
}

void Assignment::clear(Var v) {
  if (status_.at(v) == ValueStatus::Permanent)
    throw std::logic_error("cannot clear permanent variable " + std::to_string(v));
  status_[v] = ValueStatus::Unset;
}

bool verify(const Formula& formula, const Assignment& assignment) {
  bool all = true;
  for (const auto& clause : formula.clauses()) {
    bool sat = false;
    for (const auto& lit : clause.literals()) {
      if (lit.var >= assignment.num_vars() || !assignment.has(lit.var))
        throw IncompleteAssignment(lit.var);
      sat = sat || lit.holds(assignment[lit.var]);
    }
    all = all && sat;
  }
  return all;
}

namespace {

void check_params(std::size_t n, std::size_t k) {
  if (k < 2 || k > 3) throw std::invalid_argument("clause width k must be 2 or 3");
  if (n < k) throw std::invalid_argument("need at least k variables");
}

Clause random_clause(std::size_t n, std::size_t k, Rng& rng) {
  std::uniform_int_distribution<Var> pick(0, static_cast<Var>(n - 1));
  std::array<Literal, kMaxClauseLength> lits{};
  for (std::size_t i = 0; i < k; ++i) {
    Var v;
    bool fresh;
    do {
      v = pick(rng);
      fresh = std::none_of(lits.begin(), lits.begin() + static_cast<std::ptrdiff_t>(i),
                           [v](const Literal& l) { return l.var == v; });
    } while (!fresh);
    lits[i].var = v;
  }
  for (std::size_t i = 0; i < k; ++i) lits[i].sign = sample_interval(rng);
  return Clause(std::span<const Literal>(lits.data(), k));
}

}  // namespace

Formula generate_formula(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  check_params(n, k);
  Rng rng(split_seed(seed, 0));
  Formula f(n);
  for (std::size_t i = 0; i < m; ++i) f.add_clause(random_clause(n, k, rng));
  return f;
}

Formula generate_mixed_formula(std::size_t n, std::size_t m2, std::size_t m3,
                               std::uint64_t seed) {
  check_params(n, m3 > 0 ? 3 : 2);
  Rng rng(split_seed(seed, 0));
  Formula f(n);
  for (std::size_t i = 0; i < m2; ++i) f.add_clause(random_clause(n, 2, rng));
  for (std::size_t i = 0; i < m3; ++i) f.add_clause(random_clause(n, 3, rng));
  return f;
}

}  // namespace isat
