#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ovkit {

/// Exact rational, always in lowest terms with a positive denominator.
using Rat = mpq_class;
/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Parses "p/q", an integer, or a finite decimal such as "0.05" or "-1.25e-3".
Rat parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& value);
std::string to_string(const BigInt& value);

/// Decimal rendering rounded to `digits` fractional digits.
std::string to_decimal(const Rat& value, int digits = 6);

long double to_long_double(const Rat& value);

/// num/den in lowest terms; den must be nonzero.
inline Rat ratio(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Rat abs_value(const Rat& value) { return value < 0 ? Rat(-value) : value; }

BigInt floor_of(const Rat& value);
BigInt ceil_of(const Rat& value);

}  // namespace ovkit
