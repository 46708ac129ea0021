#include "macwt/lp.hpp"

#include <stdexcept>

namespace macwt {

std::string_view status_name(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::Infeasible: return "infeasible";
  }
  return "?";
}

namespace {

// Dense two-phase primal simplex on
//   A' [x+ x- s a] = b',  everything >= 0,
// where each row was scaled by flip = +-1 so that b' >= 0. Slack columns
// exist for inequality rows; artificial columns only where the slack cannot
// start in the basis. Artificials never re-enter once they leave.
class Tableau {
 public:
  Tableau(const LinearSystem& system) : n_(system.variable_count()), m_(system.row_count()) {
    const auto& rows = system.rows();
    flip_.assign(m_, 1);
    sigma_.assign(m_, 0);
    slack_col_.assign(m_, -1);
    art_col_.assign(m_, -1);

    std::size_t cols = 2 * n_;
    for (std::size_t i = 0; i < m_; ++i) {
      if (rows[i].relation != Relation::Equal) {
        sigma_[i] = rows[i].relation == Relation::LessEqual ? 1 : -1;
        slack_col_[i] = static_cast<long>(cols++);
      }
      if (rows[i].rhs < 0) flip_[i] = -1;
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (slack_col_[i] < 0 || flip_[i] * sigma_[i] < 0) art_col_[i] = static_cast<long>(cols++);
    }
    cols_ = cols;
    artificial_.assign(cols_, false);
    for (std::size_t i = 0; i < m_; ++i) {
      if (art_col_[i] >= 0) artificial_[static_cast<std::size_t>(art_col_[i])] = true;
    }

    t_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m_, 0);
    for (std::size_t i = 0; i < m_; ++i) {
      auto& row = t_[i];
      const Rational f = flip_[i];
      for (const auto& term : rows[i].terms) {
        row[term.var] = f * term.coef;
        row[n_ + term.var] = -f * term.coef;
      }
      if (slack_col_[i] >= 0) row[static_cast<std::size_t>(slack_col_[i])] = flip_[i] * sigma_[i];
      if (art_col_[i] >= 0) {
        row[static_cast<std::size_t>(art_col_[i])] = 1;
        basis_[i] = static_cast<std::size_t>(art_col_[i]);
      } else {
        basis_[i] = static_cast<std::size_t>(slack_col_[i]);
      }
      row[cols_] = f * rows[i].rhs;
    }
  }

  LpResult solve(const std::vector<Rational>& objective, Sense sense) {
    LpResult result;
    bool any_artificial = false;
    for (std::size_t i = 0; i < m_; ++i) any_artificial |= art_col_[i] >= 0;

    if (any_artificial) {
      std::vector<Rational> phase1(cols_, Rational(0));
      for (std::size_t j = 0; j < cols_; ++j) {
        if (artificial_[j]) phase1[j] = -1;
      }
      set_cost(phase1);
      run();
      if (value() < 0) {
        result.status = LpStatus::Infeasible;
        result.multipliers = multipliers();
        return result;
      }
      drive_out_artificials();
    }

    std::vector<Rational> phase2(cols_, Rational(0));
    const Rational s = sense == Sense::Maximize ? 1 : -1;
    for (std::size_t k = 0; k < n_; ++k) {
      phase2[k] = s * objective[k];
      phase2[n_ + k] = -s * objective[k];
    }
    set_cost(phase2);
    const long unbounded_col = run();
    result.witness = primal();
    if (unbounded_col >= 0) {
      result.status = LpStatus::Unbounded;
      result.ray = ray(static_cast<std::size_t>(unbounded_col));
      return result;
    }
    result.status = LpStatus::Optimal;
    result.optimum = s * value();
    result.multipliers = multipliers();
    if (sense == Sense::Minimize) {
      for (auto& m : result.multipliers) m = -m;
    }
    return result;
  }

 private:
  void set_cost(std::vector<Rational> cost) {
    cost_ = std::move(cost);
    reduced_.assign(cols_ + 1, Rational(0));
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] = cost_[j];
    for (std::size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (t_[i][j] != 0) reduced_[j] -= cb * t_[i][j];
      }
    }
  }

  // Objective value of the current basis; reduced_[cols_] holds -c_B x_B.
  Rational value() const { return -reduced_[cols_]; }

  void pivot(std::size_t r, std::size_t c) {
    auto& prow = t_[r];
    const Rational p = prow[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (prow[j] != 0) {
        if (p != 1) prow[j] /= p;
        nz.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational f = row[c];
      for (std::size_t j : nz) row[j] -= f * prow[j];
    };
    for (std::size_t i = 0; i < m_; ++i) {
      if (i != r) eliminate(t_[i]);
    }
    eliminate(reduced_);
    basis_[r] = c;
  }

  // Returns -1 at optimality, otherwise the entering column of an unbounded ray.
  long run() {
    bool bland = false;
    int degenerate_streak = 0;
    for (;;) {
      long enter = -1;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (artificial_[j] || reduced_[j] <= 0) continue;
        if (enter < 0) {
          enter = static_cast<long>(j);
          if (bland) break;
        } else if (reduced_[j] > reduced_[static_cast<std::size_t>(enter)]) {
          enter = static_cast<long>(j);
        }
      }
      if (enter < 0) return -1;
      const auto c = static_cast<std::size_t>(enter);

      long leave = -1;
      Rational best;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][c] <= 0) continue;
        Rational ratio = t_[i][cols_] / t_[i][c];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[static_cast<std::size_t>(leave)])) {
          leave = static_cast<long>(i);
          best = ratio;
        }
      }
      if (leave < 0) return enter;
      if (best == 0) {
        if (++degenerate_streak > 50) bland = true;
      } else {
        degenerate_streak = 0;
      }
      pivot(static_cast<std::size_t>(leave), c);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!artificial_[basis_[i]]) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!artificial_[j] && t_[i][j] != 0) {
          pivot(i, j);
          break;
        }
      }
      // Otherwise the row is redundant; its artificial stays basic at zero.
    }
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> col_value(cols_, Rational(0));
    for (std::size_t i = 0; i < m_; ++i) col_value[basis_[i]] = t_[i][cols_];
    std::vector<Rational> x(n_);
    for (std::size_t k = 0; k < n_; ++k) x[k] = col_value[k] - col_value[n_ + k];
    return x;
  }

  std::vector<Rational> ray(std::size_t enter) const {
    std::vector<Rational> dir(cols_, Rational(0));
    dir[enter] = 1;
    for (std::size_t i = 0; i < m_; ++i) dir[basis_[i]] = -t_[i][enter];
    std::vector<Rational> r(n_);
    for (std::size_t k = 0; k < n_; ++k) r[k] = dir[k] - dir[n_ + k];
    return r;
  }

  // Row multipliers in the original (unflipped) orientation, read off the
  // reduced costs of each row's unit column.
  std::vector<Rational> multipliers() const {
    std::vector<Rational> mu(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      if (slack_col_[i] >= 0) {
        mu[i] = -reduced_[static_cast<std::size_t>(slack_col_[i])] * sigma_[i];
      } else {
        const auto a = static_cast<std::size_t>(art_col_[i]);
        mu[i] = (cost_[a] - reduced_[a]) * flip_[i];
      }
    }
    return mu;
  }

  std::size_t n_, m_, cols_ = 0;
  std::vector<int> flip_, sigma_;
  std::vector<long> slack_col_, art_col_;
  std::vector<bool> artificial_;
  std::vector<std::vector<Rational>> t_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_, reduced_;
};

}  // namespace

LpResult lp_solve(const LinearSystem& system, const std::vector<Rational>& objective, Sense sense) {
  if (objective.size() != system.variable_count()) {
    throw std::invalid_argument("objective has " + std::to_string(objective.size()) +
                                " coefficients for " + std::to_string(system.variable_count()) +
                                " variables");
  }
  Tableau tableau(system);
  return tableau.solve(objective, sense);
}

LpResult lp_solve(const LinearSystem& system, const std::map<std::string, Rational>& objective,
                  Sense sense) {
  std::vector<Rational> dense(system.variable_count(), Rational(0));
  for (const auto& [name, coef] : objective) dense[system.index_of(name)] = coef;
  return lp_solve(system, dense, sense);
}

LpResult lp_feasibility(const LinearSystem& system) {
  return lp_solve(system, std::vector<Rational>(system.variable_count(), Rational(0)),
                  Sense::Maximize);
}

namespace {

// Sign rule for a multiplier that certifies an upper bound (max) or a
// Farkas contradiction: >= 0 on <= rows, <= 0 on >= rows.
bool sign_ok(const LinearInequality& row, const Rational& m, bool reversed) {
  const int s = sgn(m) * (reversed ? -1 : 1);
  switch (row.relation) {
    case Relation::LessEqual: return s >= 0;
    case Relation::GreaterEqual: return s <= 0;
    case Relation::Equal: return true;
  }
  return false;
}

}  // namespace

bool verify_certificate(const LinearSystem& system, const std::vector<Rational>& objective,
                        Sense sense, const LpResult& result) {
  const std::size_t n = system.variable_count();
  const auto& rows = system.rows();
  auto combine = [&](std::vector<Rational>& lhs, Rational& rhs) {
    lhs.assign(n, Rational(0));
    rhs = 0;
    if (result.multipliers.size() != rows.size()) return false;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Rational& m = result.multipliers[i];
      if (m == 0) continue;
      for (const auto& t : rows[i].terms) lhs[t.var] += m * t.coef;
      rhs += m * rows[i].rhs;
    }
    return true;
  };

  switch (result.status) {
    case LpStatus::Infeasible: {
      std::vector<Rational> lhs;
      Rational rhs;
      if (!combine(lhs, rhs)) return false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!sign_ok(rows[i], result.multipliers[i], false)) return false;
      }
      for (const auto& v : lhs) {
        if (v != 0) return false;
      }
      return rhs < 0;
    }
    case LpStatus::Optimal: {
      if (result.witness.size() != n || !system.satisfied_by(result.witness)) return false;
      Rational achieved = 0;
      for (std::size_t k = 0; k < n; ++k) achieved += objective[k] * result.witness[k];
      if (achieved != result.optimum) return false;
      std::vector<Rational> lhs;
      Rational rhs;
      if (!combine(lhs, rhs)) return false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!sign_ok(rows[i], result.multipliers[i], sense == Sense::Minimize)) return false;
      }
      for (std::size_t k = 0; k < n; ++k) {
        if (lhs[k] != objective[k]) return false;
      }
      return rhs == result.optimum;
    }
    case LpStatus::Unbounded: {
      if (result.witness.size() != n || !system.satisfied_by(result.witness)) return false;
      if (result.ray.size() != n) return false;
      for (const auto& row : rows) {
        const Rational d = row.evaluate(result.ray);
        if (row.relation == Relation::LessEqual && d > 0) return false;
        if (row.relation == Relation::GreaterEqual && d < 0) return false;
        if (row.relation == Relation::Equal && d != 0) return false;
      }
      Rational gain = 0;
      for (std::size_t k = 0; k < n; ++k) gain += objective[k] * result.ray[k];
      return sense == Sense::Maximize ? gain > 0 : gain < 0;
    }
  }
  return false;
}

}  // namespace macwt
