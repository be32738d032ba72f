#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace trispline {

/// Arbitrary-precision exact rational. Always kept canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Parses an exact rational from a decimal literal ("0.1", "-2.5e-3", "7") or a
/// fraction ("3/4", "-1/3"). Decimal input is never routed through floating point.
Rational parse_rational(std::string_view text);

/// "p/q", or just "p" for integers.
std::string to_string(const Rational& value);

/// Terminating decimal rendering when the value has one ("-0.15", "2"),
/// otherwise falls back to "p/q".
std::string to_decimal_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace trispline
