#pragma once

#include "skewcert/rational.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace skewcert {

/// a + b*sqrt(d) with d a squarefree positive integer. Rationals use d = 1 and
/// b = 0 and mix freely with any d. Signs and comparisons are exact, including
/// between elements over different square roots.
class QuadExt {
 public:
  QuadExt() = default;
  QuadExt(const Rational& a) : a_(a) {}  // NOLINT: rationals embed implicitly
  QuadExt(long a) : a_(a) {}             // NOLINT
  /// d > 0 need not be squarefree; square factors move into b.
  QuadExt(const Rational& a, const Rational& b, const Integer& d);

  static QuadExt sqrt(const Integer& n);

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  QuadExt operator-() const { return QuadExt(-a_, -b_, d_); }
  QuadExt operator+(const QuadExt& o) const;
  QuadExt operator-(const QuadExt& o) const { return *this + (-o); }
  QuadExt operator*(const QuadExt& o) const;
  QuadExt operator/(const QuadExt& o) const;
  QuadExt& operator+=(const QuadExt& o) { return *this = *this + o; }
  QuadExt& operator-=(const QuadExt& o) { return *this = *this - o; }
  QuadExt& operator*=(const QuadExt& o) { return *this = *this * o; }
  QuadExt pow(long e) const;

  QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * Rational(d_); }
  Rational trace() const { return 2 * a_; }
  /// Monic minimal polynomial over Q, coefficients low to high.
  std::vector<Rational> minimal_polynomial() const;

  int sign() const;
  double to_double() const;
  std::string to_string() const;

 private:
  Rational a_ = 0;
  Rational b_ = 0;
  Integer d_ = 1;
};

/// Reads sums of terms "q" and "q*sqrt(n)" (q rational, spaces ignored), e.g.
/// "7 + 4*sqrt(3)", "-sqrt(5)/2" is not accepted but "-1/2*sqrt(5)" is.
QuadExt parse_quadext(std::string_view text);

/// Exact three-way comparison, -1, 0 or 1. Works across different d.
int compare(const QuadExt& x, const QuadExt& y);

inline bool operator==(const QuadExt& x, const QuadExt& y) { return compare(x, y) == 0; }
inline bool operator!=(const QuadExt& x, const QuadExt& y) { return compare(x, y) != 0; }
inline bool operator<(const QuadExt& x, const QuadExt& y) { return compare(x, y) < 0; }
inline bool operator<=(const QuadExt& x, const QuadExt& y) { return compare(x, y) <= 0; }
inline bool operator>(const QuadExt& x, const QuadExt& y) { return compare(x, y) > 0; }
inline bool operator>=(const QuadExt& x, const QuadExt& y) { return compare(x, y) >= 0; }

}  // namespace skewcert
