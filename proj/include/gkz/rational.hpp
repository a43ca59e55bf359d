#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gkz {

using Integer = mpz_class;

// mpq_class keeps numerator and denominator coprime with a positive
// denominator after every arithmetic operation; we only have to
// canonicalize values built from raw parts.
using Rational = mpq_class;

Rational make_rational(const Integer &num, const Integer &den);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational &q);
std::string to_string(const Integer &z);

// Accepts "p", "-p", "p/q". Throws InputError on anything else.
Rational parse_rational(std::string_view text);

inline int sign(const Rational &q) { return sgn(q); }
inline int sign(const Integer &z) { return sgn(z); }

Integer binomial(unsigned long n, unsigned long k);
Integer ipow(const Integer &base, unsigned long exp);

} // namespace gkz
