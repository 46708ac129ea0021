#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace macwt {

// GMP keeps every mpq_class canonical: lowest terms, positive denominator.
using Rational = mpq_class;

// Information quantities are irrational; they enter linear systems rounded
// to the nearest multiple of 2^-kRhsDenominatorBits.
inline constexpr int kRhsDenominatorBits = 48;

Rational rhs_from_real(double value);

// Exact binary value of a finite double.
Rational exact_rational(double value);

inline double to_double(const Rational& value) { return value.get_d(); }

// "n" when the denominator is 1, "n/d" otherwise.
std::string to_string(const Rational& value);

// Accepts "n", "n/d", and decimal/scientific literals ("0.125", "-3e-2").
// Decimals are converted exactly, so "0.1" parses as 1/10.
Rational parse_rational(std::string_view text);

}  // namespace macwt
