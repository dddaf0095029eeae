#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace skewcert {

using Integer = mpz_class;
using Rational = mpq_class;

/// num/den in canonical form. Throws Error on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den);

Rational parse_rational(std::string_view text);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

double to_double(const Rational& q);

Integer lcm(const Integer& a, const Integer& b);
Integer gcd(const Integer& a, const Integer& b);

/// Largest d with d*d <= n, for n >= 0.
Integer isqrt(const Integer& n);

/// Factors n > 0 as k^2 * d with d squarefree; returns {k, d}.
std::pair<Integer, Integer> square_free_split(const Integer& n);

}  // namespace skewcert
