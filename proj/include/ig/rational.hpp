#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ig {

using Rational = mpq_class;

/// Parses "p/q" or an integer; the result is canonicalized. Throws ValidationError.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when q == 1).
std::string to_string(const Rational& q);

/// Decimal approximation, only for human-facing reports.
double approx(const Rational& q);

}  // namespace ig
