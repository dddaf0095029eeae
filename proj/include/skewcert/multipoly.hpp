#pragma once

#include "skewcert/rational.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace skewcert {

using Exponents = std::vector<std::uint32_t>;
using Vars = std::shared_ptr<const std::vector<std::string>>;

Vars make_vars(std::vector<std::string> names);
bool same_vars(const Vars& a, const Vars& b);

/// Graded lexicographic order, first variable most significant.
bool grlex_greater(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exps;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept in descending
/// graded-lex order with no zero coefficients.
class MultiPoly {
 public:
  explicit MultiPoly(Vars vars);

  static MultiPoly constant(Vars vars, const Rational& c);
  static MultiPoly variable(Vars vars, std::size_t index);
  static MultiPoly monomial(Vars vars, Exponents exps, const Rational& c);
  /// Accepts unsorted terms with repeats; combines and drops zeros.
  static MultiPoly from_terms(Vars vars, std::vector<Term> terms);

  const Vars& vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_one() const;
  /// Requires is_constant().
  Rational constant_value() const;
  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t v) const;
  bool depends_on(std::size_t v) const { return degree_in(v) > 0; }
  bool is_homogeneous() const;
  const Term& leading_term() const;
  const Rational& leading_coeff() const { return leading_term().coeff; }
  bool is_integral() const;

  /// Positive rational c with p/c integral, primitive, positive leading coefficient.
  Rational content() const;
  MultiPoly primitive_part() const;
  Exponents min_exponents() const;
  MultiPoly divide_monomial(const Exponents& m) const;
  MultiPoly multiply_monomial(const Exponents& m) const;

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator*(const Rational& c) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly pow(unsigned e) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }
  std::size_t hash() const;

  Rational evaluate(std::span<const Rational> point) const;
  /// Replaces variable i by images[i]; the result lives in the images' ring.
  MultiPoly substitute(std::span<const MultiPoly> images) const;
  MultiPoly derivative(std::size_t v) const;

  /// coeffs[k] is the coefficient of v^k, with v's exponent set to zero.
  std::vector<MultiPoly> coefficients_in(std::size_t v) const;
  static MultiPoly from_coefficients_in(const Vars& vars, std::size_t v,
                                        const std::vector<MultiPoly>& coeffs);

  /// Same terms, read in a different variable list (names matched by position).
  MultiPoly with_vars(Vars vars) const;

  std::string to_string() const;

 private:
  Vars vars_;
  std::vector<Term> terms_;
};

MultiPoly operator*(const Rational& c, const MultiPoly& p);

/// Exact quotient a/b; nullopt when b does not divide a.
std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b);
/// Exact quotient a/b; throws Error when b does not divide a.
MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b);

}  // namespace skewcert
