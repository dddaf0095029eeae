#pragma once

#include "skewcert/multipoly.hpp"

#include <vector>

namespace skewcert {

/// Greatest common divisor over Q, returned primitive with integer
/// coefficients and positive leading coefficient; gcd(0, 0) = 0.
MultiPoly gcd(const MultiPoly& a, const MultiPoly& b);

/// gcd of a list, short-circuiting once the running gcd is constant.
MultiPoly gcd(const std::vector<MultiPoly>& polys);

/// Random line test mod p: true means a and b are certainly coprime over Q.
/// A false answer is inconclusive. Inputs must be integral.
bool certify_coprime(const MultiPoly& a, const MultiPoly& b, unsigned attempts = 2);

/// Pseudo-remainder of a by b viewed as polynomials in variable v.
MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t v);

}  // namespace skewcert
