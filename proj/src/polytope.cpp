#include "macwt/polytope.hpp"

#include "macwt/linear_system_io.hpp"
#include "macwt/lp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace macwt {

namespace {

// <= form with the leading coefficient scaled to +-1 (equalities to +1).
LinearInequality canonical(LinearInequality row) {
  row = as_less_equal(std::move(row));
  if (row.terms.empty()) return row;
  Rational lead = abs(row.terms.front().coef);
  if (row.relation == Relation::Equal) lead = row.terms.front().coef;
  if (lead != 1) {
    for (auto& t : row.terms) t.coef /= lead;
    row.rhs /= lead;
  }
  return row;
}

std::string lhs_key(const LinearInequality& row) {
  std::string key(relation_symbol(row.relation));
  for (const auto& t : row.terms) key += " " + std::to_string(t.var) + ":" + to_string(t.coef);
  return key;
}

LinearInequality combine(const LinearInequality& up, const LinearInequality& low, std::size_t var) {
  // up has coef > 0 on var, low has coef < 0, both in <= form.
  const Rational a = up.coefficient(var);
  const Rational b = -low.coefficient(var);
  LinearInequality out;
  for (const auto& t : up.terms) out.terms.push_back({t.var, b * t.coef});
  for (const auto& t : low.terms) out.terms.push_back({t.var, a * t.coef});
  out.terms = normalize_terms(std::move(out.terms));
  out.relation = Relation::LessEqual;
  out.rhs = b * up.rhs + a * low.rhs;
  out.provenance = "(" + up.provenance + ") + (" + low.provenance + ")";
  return canonical(std::move(out));
}

LinearSystem eliminate_one(const LinearSystem& system, std::size_t var) {
  const auto& rows = system.rows();
  std::vector<LinearInequality> out;

  for (std::size_t e = 0; e < rows.size(); ++e) {
    if (rows[e].relation != Relation::Equal) continue;
    const Rational a = rows[e].coefficient(var);
    if (a == 0) continue;
    // var = (rhs - rest) / a, substituted everywhere else.
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == e) continue;
      const Rational c = rows[i].coefficient(var);
      if (c == 0) {
        out.push_back(rows[i]);
        continue;
      }
      LinearInequality r;
      const Rational f = c / a;
      for (const auto& t : rows[i].terms) r.terms.push_back(t);
      for (const auto& t : rows[e].terms) r.terms.push_back({t.var, -f * t.coef});
      r.terms = normalize_terms(std::move(r.terms));
      r.relation = rows[i].relation;
      r.rhs = rows[i].rhs - f * rows[e].rhs;
      r.provenance = rows[i].provenance + " | subst(" + rows[e].provenance + ")";
      out.push_back(std::move(r));
    }
    return system.with_rows(std::move(out)).substitute({{system.variables()[var], Rational(0)}});
  }

  std::vector<LinearInequality> upper, lower;
  for (const auto& row : rows) {
    const Rational c = row.coefficient(var);
    if (c == 0) {
      out.push_back(row);
      continue;
    }
    LinearInequality le = as_less_equal(row);
    (le.coefficient(var) > 0 ? upper : lower).push_back(std::move(le));
  }
  for (const auto& u : upper) {
    for (const auto& l : lower) out.push_back(combine(u, l, var));
  }
  return system.with_rows(std::move(out)).substitute({{system.variables()[var], Rational(0)}});
}

}  // namespace

std::pair<std::size_t, std::size_t> bound_counts(const LinearSystem& system, const std::string& var) {
  const std::size_t idx = system.index_of(var);
  std::size_t upper = 0, lower = 0;
  for (const auto& row : system.rows()) {
    const Rational c = row.coefficient(idx);
    if (c == 0) continue;
    if (row.relation == Relation::Equal) {
      ++upper;
      ++lower;
    } else if ((c > 0) == (row.relation == Relation::LessEqual)) {
      ++upper;
    } else {
      ++lower;
    }
  }
  return {upper, lower};
}

LinearSystem dedupe_rows(const LinearSystem& system) {
  std::vector<LinearInequality> kept;
  std::map<std::string, std::size_t> seen;
  bool contradiction = false;
  for (const auto& original : system.rows()) {
    if (original.is_constant()) {
      if (!original.constant_holds() && !contradiction) {
        contradiction = true;
        kept.push_back(original);
      }
      continue;
    }
    LinearInequality row = canonical(original);
    row.provenance = original.provenance;
    const std::string key = lhs_key(row);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(key, kept.size());
      kept.push_back(std::move(row));
      continue;
    }
    auto& prev = kept[it->second];
    if (row.relation == Relation::LessEqual) {
      if (row.rhs < prev.rhs) prev = std::move(row);
    } else if (row.rhs != prev.rhs) {
      kept.push_back(std::move(row));
    }
  }
  return system.with_rows(std::move(kept));
}

LinearSystem redundancy_prune(const LinearSystem& system) {
  std::vector<LinearInequality> rows = system.rows();
  std::vector<bool> alive(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].is_constant()) {
      if (rows[i].constant_holds()) alive[i] = false;
      continue;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!alive[i]) continue;
    std::vector<LinearInequality> rest;
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != i && alive[j]) rest.push_back(rows[j]);
    }
    const LinearSystem others = system.with_rows(rest);

    auto bounded_by = [&](const LinearInequality& le) {
      std::vector<Rational> obj(system.variable_count(), Rational(0));
      for (const auto& t : le.terms) obj[t.var] = t.coef;
      const LpResult r = lp_solve(others, obj, Sense::Maximize);
      if (r.status == LpStatus::Infeasible) return true;
      return r.status == LpStatus::Optimal && r.optimum <= le.rhs;
    };

    bool implied;
    if (rows[i].relation == Relation::Equal) {
      LinearInequality up = rows[i];
      up.relation = Relation::LessEqual;
      LinearInequality down = rows[i];
      down.relation = Relation::GreaterEqual;
      implied = bounded_by(up) && bounded_by(as_less_equal(down));
    } else {
      implied = bounded_by(as_less_equal(rows[i]));
    }
    if (implied) alive[i] = false;
  }
  std::vector<LinearInequality> kept;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (alive[i]) kept.push_back(std::move(rows[i]));
  }
  return system.with_rows(std::move(kept));
}

LinearSystem fourier_motzkin_project(const LinearSystem& system,
                                     const std::vector<std::string>& eliminate,
                                     ProjectionOptions options) {
  std::vector<std::size_t> order;
  for (const auto& name : eliminate) order.push_back(system.index_of(name));
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  LinearSystem current = system;
  for (std::size_t idx : order) {
    const std::string& name = system.variables()[idx];
    current = dedupe_rows(eliminate_one(current, current.index_of(name)));
    if (options.prune) current = redundancy_prune(current);
  }
  return current;
}

std::vector<std::string> canonical_rows(const LinearSystem& system) {
  std::vector<std::string> out;
  for (const auto& row : system.rows()) {
    LinearInequality c = canonical(row);
    c.provenance.clear();
    out.push_back(format_row(system, c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool contains_point(const LinearSystem& system, const RatePoint& point, double tol) {
  std::vector<double> x;
  x.reserve(system.variable_count());
  for (const auto& v : system.variables()) x.push_back(point.at(v));
  for (const auto& row : system.rows()) {
    double lhs = 0;
    for (const auto& t : row.terms) lhs += to_double(t.coef) * x[t.var];
    const double rhs = to_double(row.rhs);
    switch (row.relation) {
      case Relation::LessEqual:
        if (lhs > rhs + tol) return false;
        break;
      case Relation::GreaterEqual:
        if (lhs < rhs - tol) return false;
        break;
      case Relation::Equal:
        if (std::abs(lhs - rhs) > tol) return false;
        break;
    }
  }
  return true;
}

bool contains_point(const LinearSystem& system, const std::vector<Rational>& point) {
  if (point.size() != system.variable_count()) {
    throw std::invalid_argument("point dimension does not match the system");
  }
  return system.satisfied_by(point);
}

namespace {

LinearSystem aligned(const LinearSystem& reference, const LinearSystem& other) {
  std::set<std::string> a(reference.variables().begin(), reference.variables().end());
  std::set<std::string> b(other.variables().begin(), other.variables().end());
  if (a != b) {
    std::string msg = "variable sets differ:";
    for (const auto& v : a) {
      if (!b.count(v)) msg += " -" + v;
    }
    for (const auto& v : b) {
      if (!a.count(v)) msg += " +" + v;
    }
    throw std::invalid_argument(msg);
  }
  return other.reindexed(reference.variables());
}

}  // namespace

bool polytope_contains(const LinearSystem& outer, const LinearSystem& inner) {
  return polytope_contains(outer, inner, Rational(0));
}

bool polytope_contains(const LinearSystem& outer, const LinearSystem& inner_raw, const Rational& slack) {
  const LinearSystem inner = aligned(outer, inner_raw);
  if (!is_feasible(inner)) return true;
  for (const auto& row : outer.rows()) {
    auto check = [&](const LinearInequality& le) {
      std::vector<Rational> obj(outer.variable_count(), Rational(0));
      for (const auto& t : le.terms) obj[t.var] = t.coef;
      const LpResult r = lp_solve(inner, obj, Sense::Maximize);
      return r.status == LpStatus::Optimal && r.optimum <= le.rhs + slack;
    };
    if (row.relation == Relation::Equal) {
      LinearInequality up = row;
      up.relation = Relation::LessEqual;
      LinearInequality down = row;
      down.relation = Relation::GreaterEqual;
      if (!check(up) || !check(as_less_equal(down))) return false;
    } else if (!check(as_less_equal(row))) {
      return false;
    }
  }
  return true;
}

bool polytope_equal(const LinearSystem& a, const LinearSystem& b) {
  const LinearSystem b2 = aligned(a, b);
  return polytope_contains(a, b2) && polytope_contains(b2, a);
}

bool is_feasible(const LinearSystem& system) { return lp_feasibility(system).feasible(); }

}  // namespace macwt
