#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gtrans {

/// Exact rational number, always kept in canonical form (reduced, positive
/// denominator). Every arithmetic result of mpq_class is canonical.
using Scalar = mpq_class;

/// Arbitrary-precision integer.
using BigInt = mpz_class;

/// Parses "7", "-2/3", "1.25", "-3e-2" exactly. Throws std::invalid_argument.
Scalar parse_scalar(std::string_view text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Scalar& value);

double to_double(const Scalar& value);

/// Exact conversion of a finite double (every double is a dyadic rational).
Scalar from_double(double value);

/// Rational p/q with q = 10^digits closest to value.
Scalar round_to_decimal(double value, int digits);

Scalar abs(const Scalar& value);

inline bool is_integer(const Scalar& value) { return value.get_den() == 1; }

BigInt factorial(unsigned n);

}  // namespace gtrans
