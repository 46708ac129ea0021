#include "macwt/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace macwt {

Rational rhs_from_real(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("rhs_from_real: non-finite value");
  }
  const double scaled = std::ldexp(value, kRhsDenominatorBits);
  mpz_class numerator;
  mpz_set_d(numerator.get_mpz_t(), std::nearbyint(scaled));
  mpz_class denominator = 1;
  mpz_mul_2exp(denominator.get_mpz_t(), denominator.get_mpz_t(), kRhsDenominatorBits);
  Rational result(numerator, denominator);
  result.canonicalize();
  return result;
}

Rational exact_rational(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("exact_rational: non-finite value");
  }
  Rational result;
  mpq_set_d(result.get_mpq_t(), value);
  return result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  mpz_class out;
  std::string digits(text);
  if (out.set_str(digits, 10) != 0) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  return out;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty rational literal");

  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), whole);
    mpz_class den = parse_integer(text.substr(slash + 1), whole);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(whole) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    mpz_class magnitude = parse_integer(exp_part, whole);
    if (!magnitude.fits_slong_p() || abs(magnitude) > 4000) {
      throw std::invalid_argument("exponent out of range in '" + std::string(whole) + "'");
    }
    exponent = magnitude.get_si();
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    exponent -= static_cast<long>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  }
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(num, scale) : Rational(num * scale, 1);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace macwt
