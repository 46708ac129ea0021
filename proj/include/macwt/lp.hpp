#pragma once

#include "macwt/linear_system.hpp"

#include <map>
#include <string>
#include <vector>

namespace macwt {

enum class Sense { Maximize, Minimize };
enum class LpStatus { Optimal, Unbounded, Infeasible };

std::string_view status_name(LpStatus status);

// Variables of the system are free; sign constraints must be rows.
//
// multipliers holds one value per row:
//  Optimal:    sum_i m_i*a_i = c and sum_i m_i*b_i = optimum; for Maximize
//              m_i >= 0 on <= rows and m_i <= 0 on >= rows, reversed for
//              Minimize.
//  Infeasible: sum_i m_i*a_i = 0 and sum_i m_i*b_i < 0, with m_i >= 0 on
//              <= rows and m_i <= 0 on >= rows.
// For Unbounded, witness is feasible and ray is an improving recession
// direction.
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational optimum;
  std::vector<Rational> witness;
  std::vector<Rational> multipliers;
  std::vector<Rational> ray;

  bool feasible() const { return status != LpStatus::Infeasible; }
};

LpResult lp_solve(const LinearSystem& system, const std::vector<Rational>& objective, Sense sense);
LpResult lp_solve(const LinearSystem& system, const std::map<std::string, Rational>& objective,
                  Sense sense);

// Feasibility only (zero objective).
LpResult lp_feasibility(const LinearSystem& system);

// Exact re-check of whatever the result claims.
bool verify_certificate(const LinearSystem& system, const std::vector<Rational>& objective,
                        Sense sense, const LpResult& result);

}  // namespace macwt
