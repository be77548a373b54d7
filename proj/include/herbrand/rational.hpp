#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace herbrand {

// Exact arithmetic throughout. mpq_class keeps values in lowest terms with a
// positive denominator as long as every constructed value is canonicalized,
// which make_rational guarantees.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational make_rational(const Integer& num, const Integer& den);

// Renders "num/den" (denominator always shown, also for integers).
std::string to_fraction_string(const Rational& q);

// Parses "a", "-a" or "a/b". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(const std::string& text);

// Display-only decimal rendering with the given number of significant digits.
std::string to_decimal_string(const Rational& q, int significant_digits = 20);

bool is_integer(const Rational& q);

// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer& z);

Integer ipow(std::int64_t base, unsigned exponent);

}  // namespace herbrand
