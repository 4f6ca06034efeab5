#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace stepline {

/// Exact rational scalar used throughout the library.
using Rational = mpq_class;

/// Parses "num/den", "num" or "-num/den". Whitespace is not accepted.
/// Throws std::invalid_argument on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "n" for integers, "n/d" otherwise (lowest terms).
std::string to_string(const Rational& value);

/// Decimal rendering for human-oriented output only.
std::string to_decimal(const Rational& value, int digits = 12);

} // namespace stepline
