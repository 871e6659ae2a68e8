#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dioph {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& x);
std::string to_string(const Integer& x);

// Accepts "p/q" and "p" with optional sign; no decimals.
Rational parse_rational(std::string_view s);

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Exponent of p in x; x must be nonzero.
long valuation(const Integer& x, const Integer& p);
long valuation(const Rational& x, const Integer& p);

// p^e as a rational, e may be negative.
Rational rational_pow(const Integer& p, long e);
Rational rational_pow(const Rational& x, long e);

// BPSW through GMP: deterministic below 2^64, no known counterexample above.
bool is_prime(const Integer& n);

// Prime factorization of |n| (n != 0) by trial division and Pollard rho.
std::vector<std::pair<Integer, int>> factorize(const Integer& n);

Integer binomial(long n, long k);
Integer factorial(long n);

Integer floor_rational(const Rational& x);
Integer ceil_rational(const Rational& x);

inline Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

}  // namespace dioph
