#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ostrovsky::algebra {

// mpq_class keeps gcd(|num|, den) = 1 and den > 0 after every arithmetic
// operation; values built from strings must be canonicalized explicitly.
using BigInteger = mpz_class;
using BigRational = mpq_class;

/// Parses "3", "-2" or "1/2". Throws MalformedInput on anything else or a zero denominator.
BigRational parse_rational(std::string_view text);

/// "p/q" or "p" when q == 1.
std::string to_string(const BigRational& value);

}  // namespace ostrovsky::algebra
