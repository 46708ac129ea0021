#pragma once

#include "macwt/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace macwt {

enum class Relation { LessEqual, GreaterEqual, Equal };

std::string_view relation_symbol(Relation relation);
Relation parse_relation(std::string_view symbol);

struct Term {
  std::size_t var = 0;
  Rational coef;
};

// One row `sum coef*var (<=|>=|=) rhs`. Terms are sorted by variable index
// and never hold a zero coefficient; a row with no terms is a constant test.
struct LinearInequality {
  std::vector<Term> terms;
  Relation relation = Relation::LessEqual;
  Rational rhs;
  std::string provenance;

  Rational coefficient(std::size_t var) const;
  bool is_constant() const { return terms.empty(); }
  Rational evaluate(std::span<const Rational> point) const;
  bool satisfied_by(std::span<const Rational> point) const;
  // For constant rows: whether 0 (rel) rhs holds.
  bool constant_holds() const;
};

// Drops zeros and merges duplicate indices; result sorted by index.
std::vector<Term> normalize_terms(std::vector<Term> terms);

// The same row rewritten as `<=` (>= rows are negated). Equality rows are
// returned unchanged.
LinearInequality as_less_equal(LinearInequality row);

class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> variables);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t variable_count() const { return variables_.size(); }
  std::optional<std::size_t> find_variable(std::string_view name) const;
  // Throws std::out_of_range naming the variable.
  std::size_t index_of(std::string_view name) const;
  std::size_t add_variable(std::string name);

  const std::vector<LinearInequality>& rows() const { return rows_; }
  std::size_t row_count() const { return rows_.size(); }

  void add_row(LinearInequality row);
  void add_row(const std::map<std::string, Rational>& coefficients, Relation relation,
               Rational rhs, std::string provenance = {});

  // Same variables, different rows.
  LinearSystem with_rows(std::vector<LinearInequality> rows) const;

  // Pins the named variables to constants and removes them from the system.
  LinearSystem substitute(const std::map<std::string, Rational>& values) const;

  // Adds `v >= 0` for each listed variable (all variables when empty).
  LinearSystem with_nonnegativity(const std::vector<std::string>& names = {}) const;

  // Re-expresses the rows over `variables`, which must be a superset.
  LinearSystem reindexed(const std::vector<std::string>& variables) const;

  bool satisfied_by(std::span<const Rational> point) const;

 private:
  std::vector<std::string> variables_;
  std::vector<LinearInequality> rows_;
};

// A real-valued assignment of rate variables.
struct RatePoint {
  std::map<std::string, double> assignment;

  double at(const std::string& name) const;
};

// Exact rational values of `point` aligned with `system.variables()`.
// Throws std::invalid_argument if a variable is missing.
std::vector<Rational> exact_coordinates(const LinearSystem& system, const RatePoint& point);

RatePoint to_rate_point(const LinearSystem& system, std::span<const Rational> values);

}  // namespace macwt
