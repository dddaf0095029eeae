#pragma once

#include "skewcert/linalg.hpp"
#include "skewcert/quadext.hpp"
#include "skewcert/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace skewcert {

/// Dense polynomial in one variable over Q, coefficients low to high, no
/// trailing zeros (the zero polynomial is empty).
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);
  static UniPoly constant(const Rational& c);
  static UniPoly x();
  /// x - r
  static UniPoly linear(const Rational& r);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return int(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Rational& lc() const;
  Rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }

  Rational operator()(const Rational& x) const;
  QuadExt operator()(const QuadExt& x) const;

  UniPoly operator+(const UniPoly& o) const;
  UniPoly operator-(const UniPoly& o) const;
  UniPoly operator*(const UniPoly& o) const;
  UniPoly operator*(const Rational& c) const;
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  UniPoly derivative() const;
  UniPoly monic() const;
  /// Integer coefficients with content 1 and positive leading coefficient.
  UniPoly primitive() const;
  bool is_integral() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
UniPoly gcd(UniPoly a, UniPoly b);
UniPoly square_free_part(const UniPoly& p);

/// Characteristic polynomial det(xI - M) by Faddeev-LeVerrier, exact over Q.
UniPoly charpoly(const RatMatrix& M);

/// A real root in (lo, hi]; lo == hi means the root is exactly lo.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / 2; }
};

class SturmSequence {
 public:
  /// p must be square-free.
  explicit SturmSequence(const UniPoly& p);
  int variations(const Rational& x) const;
  /// Number of roots in (a, b].
  int count(const Rational& a, const Rational& b) const;

 private:
  std::vector<UniPoly> seq_;
};

/// 1 + max |a_i / a_n|: every complex root has smaller modulus.
Rational cauchy_bound(const UniPoly& p);

/// Disjoint isolating intervals for the distinct real roots, increasing.
std::vector<RootInterval> isolate_real_roots(const UniPoly& p);

/// Bisects (p square-free, one root in r) until the width is below `width`.
void refine_root(const UniPoly& p, RootInterval& r, const Rational& width);

}  // namespace skewcert
