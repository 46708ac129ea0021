#pragma once

#include "macwt/linear_system.hpp"

#include <string>
#include <utility>
#include <vector>

namespace macwt {

struct ProjectionOptions {
  bool prune = true;  // LP redundancy removal after every elimination
};

// Removes `eliminate` from the system, one variable at a time in ascending
// column order. Equality rows mentioning the variable are used for
// substitution; otherwise every upper bound is paired with every lower bound.
LinearSystem fourier_motzkin_project(const LinearSystem& system,
                                     const std::vector<std::string>& eliminate,
                                     ProjectionOptions options = {});

// Number of (upper, lower) bounds the variable has; equalities count as both.
std::pair<std::size_t, std::size_t> bound_counts(const LinearSystem& system, const std::string& var);

// Drops each row whose LHS, maximized over the remaining rows, cannot
// exceed its rhs. Rows are visited in order.
LinearSystem redundancy_prune(const LinearSystem& system);

// Syntactic cleanup: scales each row so its leading coefficient is +-1,
// merges rows with identical left-hand sides, drops constant rows that hold.
LinearSystem dedupe_rows(const LinearSystem& system);

// Row-per-line canonical strings (leading coefficient +-1, sorted) so two
// irredundant systems can be compared as sets.
std::vector<std::string> canonical_rows(const LinearSystem& system);

bool contains_point(const LinearSystem& system, const RatePoint& point, double tol);
bool contains_point(const LinearSystem& system, const std::vector<Rational>& point);

// inner ⊆ outer, by one LP per row of outer. Variable sets must match.
bool polytope_contains(const LinearSystem& outer, const LinearSystem& inner);
// Same, but each row of outer may be exceeded by up to `slack`.
bool polytope_contains(const LinearSystem& outer, const LinearSystem& inner, const Rational& slack);
bool polytope_equal(const LinearSystem& a, const LinearSystem& b);

bool is_feasible(const LinearSystem& system);

}  // namespace macwt
