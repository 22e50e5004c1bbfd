#pragma once

#include <stdexcept>
#include <variant>
#include <vector>

#include "isat/formula.hpp"

namespace isat {

/// Per-variable sorted candidate values: every endpoint of the variable's
/// literals, midpoints of consecutive distinct endpoints, and 0 and 1.
/// Variables that occur in no clause get the single candidate 1/2.
using CandidateGrid = std::vector<std::vector<double>>;

[[nodiscard]] CandidateGrid candidate_grid(const Formula& formula);

class OracleTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleSat {
  Assignment assignment;
};
struct OracleUnsat {};
using OracleResult = std::variant<OracleSat, OracleUnsat>;

inline constexpr double kOracleMaxGridProduct = 1e8;

/// Drops every candidate whose set of satisfied literals is contained in that
/// of another candidate of the same variable (keeping the first of equal sets).
/// Satisfiability over the reduced grid equals satisfiability over `grid`.
[[nodiscard]] CandidateGrid reduce_candidates(const Formula& formula, const CandidateGrid& grid);

/// Exhaustive search over reduce_candidates(grid) with pruning on fully
/// assigned clauses. Throws OracleTooLarge if the reduced grid product exceeds
/// kOracleMaxGridProduct.
[[nodiscard]] OracleResult brute_decide(const Formula& formula, const CandidateGrid& grid);
[[nodiscard]] OracleResult brute_decide(const Formula& formula);

}  // namespace isat
