#pragma once

#include "skewcert/multipoly.hpp"

#include <span>
#include <string>

namespace skewcert {

/// Element of Q(x_1..x_n) as a reduced fraction num/den. The denominator is
/// primitive with integer coefficients and positive leading coefficient; zero is 0/1.
class RatFunc {
 public:
  explicit RatFunc(const Vars& vars);
  /// A polynomial read as a fraction over 1.
  explicit RatFunc(MultiPoly p);
  /// Normalizes; throws "division by zero in function field" for den = 0.
  RatFunc(MultiPoly num, MultiPoly den);

  static RatFunc constant(const Vars& vars, const Rational& c);
  static RatFunc variable(const Vars& vars, std::size_t index);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const Vars& vars() const { return num_.vars(); }
  std::size_t nvars() const { return num_.nvars(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const { return num_.constant_value() / den_.constant_value(); }
  /// max(deg num, deg den) in variable v.
  int degree_in(std::size_t v) const;
  std::size_t term_count() const { return num_.term_count() + den_.term_count(); }

  RatFunc operator-() const;
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator*(const Rational& c) const;
  RatFunc inverse() const;
  /// Negative exponents invert first.
  RatFunc pow(int e) const;

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }
  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

  /// Throws when the denominator vanishes at the point.
  Rational evaluate(std::span<const Rational> point) const;
  /// Replaces variable i by images[i]; throws "endomorphism undefined on this
  /// element" when the substituted denominator is identically zero.
  RatFunc substitute(std::span<const RatFunc> images) const;

  RatFunc with_vars(const Vars& vars) const;
  std::string to_string() const;

 private:
  struct Reduced {};
  RatFunc(MultiPoly num, MultiPoly den, Reduced);

  MultiPoly num_;
  MultiPoly den_;
};

/// Canonical reduced form of num/den.
RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den);

}  // namespace skewcert
