#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cfsem {

// Exact probabilities. Always kept in canonical (reduced) form.
using Rational = mpq_class;

// Accepts "p/q", integers and finite decimals ("0.3" is exactly 3/10).
Rational parse_rational(std::string_view text);

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

// Decimal rendering with `significant` significant digits, trailing zeros kept.
std::string to_decimal(const Rational& value, int significant = 12);

// "1/2 (0.500000000000)"
std::string describe(const Rational& value, int significant = 12);

}  // namespace cfsem
