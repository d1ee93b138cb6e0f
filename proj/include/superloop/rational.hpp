#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace superloop {

/// Exact rational scalar. GMP keeps values in lowest terms with a positive
/// denominator, which is the canonical form assumed throughout.
using Rat = mpq_class;

/// Parses "7", "-3/4" or a plain decimal like "2.5" into an exact rational.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rat rat_from_string(const std::string& s);

/// Canonical rendering: "p" for integers, "p/q" otherwise.
std::string rat_to_string(const Rat& x);

/// x^e for integer e (negative exponents require x != 0).
Rat rat_pow(const Rat& x, long e);

/// num/den in lowest terms (the raw two-argument mpq_class constructor does
/// not canonicalize; always build fractions through this).
Rat rat_frac(long num, long den);

bool rat_is_integer(const Rat& x);

/// Exact integer value; throws if x is not an integer.
long rat_to_long(const Rat& x);

std::string vec_to_string(const std::vector<Rat>& v);

}  // namespace superloop
