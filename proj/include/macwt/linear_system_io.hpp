#pragma once

#include "macwt/linear_system.hpp"

#include <json.hpp>

#include <string>

namespace macwt {

// One row per line: `R1s + 1/2*R2o <= 3/4  # provenance`.
// The first line lists the variables: `vars: R1s R1o ...`.
std::string format_row(const LinearSystem& system, const LinearInequality& row);
std::string to_text(const LinearSystem& system);
LinearSystem parse_text(const std::string& text);

// Rationals travel as {"num": "...", "den": "..."} so nothing is rounded.
nlohmann::json to_json(const Rational& value);
Rational rational_from_json(const nlohmann::json& value);

nlohmann::json to_json(const LinearSystem& system);
LinearSystem system_from_json(const nlohmann::json& document);

}  // namespace macwt
