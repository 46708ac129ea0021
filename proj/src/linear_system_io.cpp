#include "macwt/linear_system_io.hpp"

#include <sstream>
#include <stdexcept>

namespace macwt {

std::string format_row(const LinearSystem& system, const LinearInequality& row) {
  std::string out;
  bool first = true;
  for (const auto& t : row.terms) {
    const std::string& name = system.variables()[t.var];
    Rational magnitude = abs(t.coef);
    if (first) {
      if (t.coef < 0) out += "-";
    } else {
      out += t.coef < 0 ? " - " : " + ";
    }
    if (magnitude != 1) out += to_string(magnitude) + "*";
    out += name;
    first = false;
  }
  if (first) out = "0";
  out += " ";
  out += relation_symbol(row.relation);
  out += " " + to_string(row.rhs);
  if (!row.provenance.empty()) out += "  # " + row.provenance;
  return out;
}

std::string to_text(const LinearSystem& system) {
  std::string out = "vars:";
  for (const auto& v : system.variables()) out += " " + v;
  out += "\n";
  for (const auto& row : system.rows()) out += format_row(system, row) + "\n";
  return out;
}

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

LinearInequality parse_row(LinearSystem& system, const std::string& line, int line_no) {
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": " + what);
  };
  std::string body = line;
  LinearInequality row;
  if (auto hash = body.find('#'); hash != std::string::npos) {
    row.provenance = trim(body.substr(hash + 1));
    body = body.substr(0, hash);
  }
  std::size_t rel_pos = std::string::npos;
  std::size_t rel_len = 0;
  for (const char* sym : {"<=", ">=", "=="}) {
    if (auto p = body.find(sym); p != std::string::npos) {
      rel_pos = p;
      rel_len = 2;
      row.relation = parse_relation(sym);
      break;
    }
  }
  if (rel_pos == std::string::npos) {
    if (auto p = body.find('='); p != std::string::npos) {
      rel_pos = p;
      rel_len = 1;
      row.relation = Relation::Equal;
    } else {
      fail("missing relation");
    }
  }
  std::string lhs = body.substr(0, rel_pos);
  row.rhs = parse_rational(trim(body.substr(rel_pos + rel_len)));

  // Split lhs into signed terms.
  std::vector<std::pair<bool, std::string>> pieces;
  std::string current;
  bool negative = false;
  for (char ch : lhs) {
    if ((ch == '+' || ch == '-') && !trim(current).empty() && current.back() != 'e' && current.back() != 'E') {
      pieces.emplace_back(negative, trim(current));
      current.clear();
      negative = ch == '-';
    } else if ((ch == '+' || ch == '-') && trim(current).empty()) {
      if (ch == '-') negative = !negative;
    } else {
      current += ch;
    }
  }
  if (!trim(current).empty()) pieces.emplace_back(negative, trim(current));

  for (auto& [neg, text] : pieces) {
    if (text == "0") continue;
    Rational coef = 1;
    std::string name = text;
    if (auto star = text.find('*'); star != std::string::npos) {
      coef = parse_rational(trim(text.substr(0, star)));
      name = trim(text.substr(star + 1));
    }
    if (name.empty()) fail("empty variable name");
    if (neg) coef = -coef;
    row.terms.push_back({system.add_variable(name), coef});
  }
  return row;
}

}  // namespace

LinearSystem parse_text(const std::string& text) {
  LinearSystem system;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string t = trim(line);
    if (t.empty()) continue;
    if (t.rfind("vars:", 0) == 0) {
      std::istringstream names(t.substr(5));
      std::string name;
      while (names >> name) system.add_variable(name);
      continue;
    }
    system.add_row(parse_row(system, t, line_no));
  }
  return system;
}

nlohmann::json to_json(const Rational& value) {
  return {{"num", value.get_num().get_str()}, {"den", value.get_den().get_str()}};
}

Rational rational_from_json(const nlohmann::json& value) {
  if (value.is_number()) return parse_rational(value.dump());
  if (value.is_string()) return parse_rational(value.get<std::string>());
  mpz_class num(value.at("num").get<std::string>(), 10);
  mpz_class den(value.at("den").get<std::string>(), 10);
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

nlohmann::json to_json(const LinearSystem& system) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : system.rows()) {
    nlohmann::json coefs = nlohmann::json::object();
    for (const auto& t : row.terms) coefs[system.variables()[t.var]] = to_json(t.coef);
    rows.push_back({{"coefficients", coefs},
                    {"relation", std::string(relation_symbol(row.relation))},
                    {"rhs", to_json(row.rhs)},
                    {"rhs_approx", to_double(row.rhs)},
                    {"provenance", row.provenance}});
  }
  return {{"variables", system.variables()}, {"rows", rows}};
}

LinearSystem system_from_json(const nlohmann::json& document) {
  LinearSystem system(document.at("variables").get<std::vector<std::string>>());
  for (const auto& r : document.at("rows")) {
    std::map<std::string, Rational> coefs;
    for (const auto& [name, value] : r.at("coefficients").items()) coefs[name] = rational_from_json(value);
    system.add_row(coefs, parse_relation(r.at("relation").get<std::string>()),
                   rational_from_json(r.at("rhs")), r.value("provenance", std::string{}));
  }
  return system;
}

}  // namespace macwt
