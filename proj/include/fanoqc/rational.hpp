#pragma once

#include <gmpxx.h>

#include <string>

namespace fanoqc {

/* All arithmetic in this library is exact. GMP's mpq_class already provides
 * the invariants we rely on everywhere: values are kept in lowest terms with
 * positive denominator, and there is no rounding anywhere. */
using Rational = mpq_class;
using Integer = mpz_class;

// C(n, k) with the usual conventions: 0 when k < 0 or k > n. Requires n >= 0.
Integer binomial(long n, long k);

// base^exp for exp >= 0 (0^0 = 1).
Integer ipow(long base, unsigned long exp);

// base^exp for any integer exp; negative exp requires base != 0.
Rational rpow(const Rational& base, long exp);

// Serialization used by cache files and machine output: always "num/den"
// with den > 0 and the fraction in lowest terms, e.g. "600/1", "-3/4".
std::string to_fraction_string(const Rational& x);

// Accepts "num" or "num/den" in base 10; canonicalizes. Throws CacheError on
// malformed input or zero denominator.
Rational rational_from_string(const std::string& s);

} // namespace fanoqc
