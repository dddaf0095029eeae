#pragma once

#include "skewcert/fieldendo.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

namespace skewcert {

/// Finitely supported sum of f_m t^m in K[t, t^-1; sigma], with t f = sigma(f) t.
class SkewElement {
 public:
  explicit SkewElement(FieldEndo sigma);
  SkewElement(FieldEndo sigma, std::map<long, RatFunc> coeffs);
  static SkewElement monomial(FieldEndo sigma, RatFunc f, long degree);
  /// A list of [degree, "rational function"] pairs.
  static SkewElement from_json(FieldEndo sigma, const nlohmann::json& literal);

  const FieldEndo& sigma() const { return sigma_; }
  const std::map<long, RatFunc>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::vector<long> support() const;
  /// Coefficient of t^m (zero when absent).
  RatFunc coeff(long m) const;

  SkewElement operator+(const SkewElement& o) const;
  SkewElement operator-(const SkewElement& o) const;
  SkewElement operator-() const;
  SkewElement operator*(const SkewElement& o) const;
  SkewElement operator*(const Rational& c) const;

  /// Requires the identical sigma object; otherwise throws.
  bool operator==(const SkewElement& o) const;
  bool operator!=(const SkewElement& o) const { return !(*this == o); }

  nlohmann::json to_json() const;
  std::string to_string() const;

 private:
  FieldEndo sigma_;
  std::map<long, RatFunc> coeffs_;
};

/// (f t^m)(g t^n) = f sigma^m(g) t^(m+n), extended bilinearly.
SkewElement skew_mul(const SkewElement& u, const SkewElement& v);

/// Isomorphism k{at, bt} -> k{ct, dt} for ad = bc:
/// g t^m -> v_m g t^m with v = c/a and v_m = v sigma(v) ... sigma^(m-1)(v).
class GaugeMap {
 public:
  GaugeMap(const RatFunc& a, const RatFunc& b, const RatFunc& c, const RatFunc& d, FieldEndo sigma);
  const RatFunc& v() const { return v_; }
  RatFunc v_power(long m) const;
  SkewElement apply(const SkewElement& w) const;

 private:
  FieldEndo sigma_;
  RatFunc v_;
};

SkewElement gauge_transform(const RatFunc& a, const RatFunc& b, const RatFunc& c,
                            const RatFunc& d, const FieldEndo& sigma, const SkewElement& w);

/// Graded isomorphism K[t;sigma] -> K[t;tau] with tau = pi^-1 sigma pi,
/// a t^j -> pi^-1(a) t^j.
class RingConjugation {
 public:
  RingConjugation(const FieldEndo& pi, const FieldEndo& sigma);
  const FieldEndo& source() const { return sigma_; }
  const FieldEndo& target() const { return tau_; }
  SkewElement apply(const SkewElement& w) const;

 private:
  FieldEndo pi_;
  FieldEndo sigma_;
  FieldEndo tau_;
};

SkewElement conjugate_ring(const FieldEndo& pi, const SkewElement& w);

struct WordProduct {
  std::string letters;
  unsigned step = 1;
  RatFunc value;
  long degree = 0;
};

/// All 2^(j+1) words u_0..u_j over {A=a, B=b} with value prod sigma^(n i)(u_i),
/// in binary order (A = 0, leftmost letter most significant).
std::vector<WordProduct> enumerate_words(const RatFunc& a, const RatFunc& b, const FieldEndo& sigma,
                                         unsigned n, unsigned j);

/// Binary-order word label, e.g. index 6 with length 4 is "ABBA".
std::string word_label(std::size_t index, unsigned length);

/// Recomputes a word as the left-to-right product of (u_i t^n) in the ring.
SkewElement word_as_product(const std::string& letters, const RatFunc& a, const RatFunc& b,
                            const FieldEndo& sigma, unsigned n);

}  // namespace skewcert
