#include "macwt/linear_system.hpp"

#include <algorithm>
#include <stdexcept>

namespace macwt {

std::string_view relation_symbol(Relation relation) {
  switch (relation) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
  }
  return "?";
}

Relation parse_relation(std::string_view symbol) {
  if (symbol == "<=") return Relation::LessEqual;
  if (symbol == ">=") return Relation::GreaterEqual;
  if (symbol == "=" || symbol == "==") return Relation::Equal;
  throw std::invalid_argument("unknown relation '" + std::string(symbol) + "'");
}

Rational LinearInequality::coefficient(std::size_t var) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), var,
                             [](const Term& t, std::size_t v) { return t.var < v; });
  if (it != terms.end() && it->var == var) return it->coef;
  return 0;
}

Rational LinearInequality::evaluate(std::span<const Rational> point) const {
  Rational lhs = 0;
  for (const auto& t : terms) lhs += t.coef * point[t.var];
  return lhs;
}

static bool compare(const Rational& lhs, Relation relation, const Rational& rhs) {
  switch (relation) {
    case Relation::LessEqual: return lhs <= rhs;
    case Relation::GreaterEqual: return lhs >= rhs;
    case Relation::Equal: return lhs == rhs;
  }
  return false;
}

bool LinearInequality::satisfied_by(std::span<const Rational> point) const {
  return compare(evaluate(point), relation, rhs);
}

bool LinearInequality::constant_holds() const { return compare(Rational(0), relation, rhs); }

std::vector<Term> normalize_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().var == t.var) {
      out.back().coef += t.coef;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coef == 0; });
  return out;
}

LinearInequality as_less_equal(LinearInequality row) {
  if (row.relation != Relation::GreaterEqual) return row;
  for (auto& t : row.terms) t.coef = -t.coef;
  row.rhs = -row.rhs;
  row.relation = Relation::LessEqual;
  return row;
}

LinearSystem::LinearSystem(std::vector<std::string> variables) {
  for (auto& v : variables) add_variable(std::move(v));
}

std::optional<std::size_t> LinearSystem::find_variable(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

std::size_t LinearSystem::index_of(std::string_view name) const {
  if (auto i = find_variable(name)) return *i;
  throw std::out_of_range("unknown variable '" + std::string(name) + "'");
}

std::size_t LinearSystem::add_variable(std::string name) {
  if (auto i = find_variable(name)) return *i;
  if (name.empty()) throw std::invalid_argument("empty variable name");
  variables_.push_back(std::move(name));
  return variables_.size() - 1;
}

void LinearSystem::add_row(LinearInequality row) {
  row.terms = normalize_terms(std::move(row.terms));
  for (const auto& t : row.terms) {
    if (t.var >= variables_.size()) {
      throw std::out_of_range("row references undeclared variable index " + std::to_string(t.var));
    }
  }
  rows_.push_back(std::move(row));
}

void LinearSystem::add_row(const std::map<std::string, Rational>& coefficients, Relation relation,
                           Rational rhs, std::string provenance) {
  LinearInequality row;
  for (const auto& [name, coef] : coefficients) row.terms.push_back({index_of(name), coef});
  row.relation = relation;
  row.rhs = std::move(rhs);
  row.provenance = std::move(provenance);
  add_row(std::move(row));
}

LinearSystem LinearSystem::with_rows(std::vector<LinearInequality> rows) const {
  LinearSystem out(variables_);
  for (auto& r : rows) out.add_row(std::move(r));
  return out;
}

LinearSystem LinearSystem::substitute(const std::map<std::string, Rational>& values) const {
  std::vector<std::string> kept;
  std::vector<std::optional<std::size_t>> remap(variables_.size());
  std::vector<const Rational*> fixed(variables_.size(), nullptr);
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (auto it = values.find(variables_[i]); it != values.end()) {
      fixed[i] = &it->second;
    } else {
      remap[i] = kept.size();
      kept.push_back(variables_[i]);
    }
  }
  for (const auto& [name, _] : values) index_of(name);

  LinearSystem out(kept);
  for (const auto& row : rows_) {
    LinearInequality r;
    r.relation = row.relation;
    r.rhs = row.rhs;
    r.provenance = row.provenance;
    for (const auto& t : row.terms) {
      if (fixed[t.var]) {
        r.rhs -= t.coef * *fixed[t.var];
      } else {
        r.terms.push_back({*remap[t.var], t.coef});
      }
    }
    out.add_row(std::move(r));
  }
  return out;
}

LinearSystem LinearSystem::with_nonnegativity(const std::vector<std::string>& names) const {
  LinearSystem out = *this;
  auto add = [&](std::size_t idx) {
    LinearInequality r;
    r.terms.push_back({idx, 1});
    r.relation = Relation::GreaterEqual;
    r.rhs = 0;
    r.provenance = "nonneg " + variables_[idx];
    out.add_row(std::move(r));
  };
  if (names.empty()) {
    for (std::size_t i = 0; i < variables_.size(); ++i) add(i);
  } else {
    for (const auto& n : names) add(index_of(n));
  }
  return out;
}

LinearSystem LinearSystem::reindexed(const std::vector<std::string>& variables) const {
  LinearSystem out(variables);
  std::vector<std::size_t> remap(variables_.size());
  for (std::size_t i = 0; i < variables_.size(); ++i) remap[i] = out.index_of(variables_[i]);
  for (const auto& row : rows_) {
    LinearInequality r = row;
    for (auto& t : r.terms) t.var = remap[t.var];
    out.add_row(std::move(r));
  }
  return out;
}

bool LinearSystem::satisfied_by(std::span<const Rational> point) const {
  return std::all_of(rows_.begin(), rows_.end(), [&](const auto& r) { return r.satisfied_by(point); });
}

double RatePoint::at(const std::string& name) const {
  auto it = assignment.find(name);
  if (it == assignment.end()) throw std::invalid_argument("rate point has no value for '" + name + "'");
  return it->second;
}

std::vector<Rational> exact_coordinates(const LinearSystem& system, const RatePoint& point) {
  std::vector<Rational> out;
  out.reserve(system.variable_count());
  for (const auto& v : system.variables()) out.push_back(exact_rational(point.at(v)));
  return out;
}

RatePoint to_rate_point(const LinearSystem& system, std::span<const Rational> values) {
  RatePoint p;
  for (std::size_t i = 0; i < system.variable_count(); ++i) {
    p.assignment[system.variables()[i]] = to_double(values[i]);
  }
  return p;
}

}  // namespace macwt
