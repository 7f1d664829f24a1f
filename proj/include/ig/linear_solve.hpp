#pragma once

// Exact least non-negative solution of x = A x + b over the rationals, where
// A is a sparse non-negative matrix and b has several columns (one per
// absorbing outcome). Variables that cannot reach a non-zero right-hand side
// are zero; the rest are solved strongly-connected-component by component,
// sinks first, with sparse Gaussian elimination inside each component.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "ig/rational.hpp"

namespace ig {

using SparseVector = std::map<std::size_t, Rational>;

struct FixpointSystem {
  std::vector<std::vector<std::pair<std::size_t, Rational>>> coeffs;  // row v: (u, a_vu)
  std::vector<SparseVector> rhs;                                      // row v: column -> b_v

  std::size_t add_variable() {
    coeffs.emplace_back();
    rhs.emplace_back();
    return coeffs.size() - 1;
  }
  std::size_t size() const { return coeffs.size(); }
};

/// Throws ClosureViolation when the system has no finite non-negative
/// solution (the series sum_n A^n b diverges).
std::vector<SparseVector> solve_fixpoint(const FixpointSystem& sys);

/// Row `start` of the same solution, computed from the expected number of
/// visits z = e_start + z A. One right-hand side whatever the number of
/// columns, so this is the cheaper call when only one row is needed.
SparseVector solve_from(const FixpointSystem& sys, std::size_t start);

}  // namespace ig
