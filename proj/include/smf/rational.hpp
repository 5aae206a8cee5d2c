#pragma once

#include <gmpxx.h>

#include <string>

namespace smf {

// All coefficients in the library are exact rationals; no floating point
// appears anywhere.
using Rational = mpq_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// Canonical "p/q" form ("p" when the denominator is 1).
std::string rational_to_string(const Rational& q);

// Parses "p/q" or "p"; rejects decimals and anything GMP would not
// canonicalize to an exact rational.
Rational rational_from_string(const std::string& text);

}  // namespace smf
