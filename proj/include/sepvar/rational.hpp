#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sepvar {

/// Exact rational number. GMP keeps every result of arithmetic in lowest
/// terms with a positive denominator; values built from strings go through
/// parse_rational, which canonicalizes.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q" (q != 0). Throws InputError on anything else,
/// including decimal notation.
Rational parse_rational(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

/// True when gcd(|num|, den) = 1 and den > 0.
bool is_canonical(const Rational& r);

double to_double(const Rational& r);

/// Exact conversion of a finite double (every finite double is a dyadic rational).
Rational from_double(double x);

} // namespace sepvar
