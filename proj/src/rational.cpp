#include "skewcert/rational.hpp"

#include "skewcert/error.hpp"

#include <cstdlib>

namespace skewcert {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("division by zero");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    Integer z;
    if (z.set_str(s, 10) != 0) throw Error("malformed integer '" + s + "'");
    return Rational(z);
  }
  Integer n, d;
  if (n.set_str(s.substr(0, slash), 10) != 0 || d.set_str(s.substr(slash + 1), 10) != 0)
    throw Error("malformed rational '" + s + "'");
  return make_rational(n, d);
}

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double to_double(const Rational& q) { return q.get_d(); }

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer isqrt(const Integer& n) {
  if (n < 0) throw Error("isqrt of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::pair<Integer, Integer> square_free_split(const Integer& n) {
  if (n <= 0) throw Error("square_free_split expects a positive integer");
  Integer k = 1, d = 1, m = n;
  // Trial division is fine at the sizes that occur (discriminants of small matrices).
  for (Integer p = 2; p * p <= m; ++p) {
    int e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) d *= p;
  }
  d *= m;
  return {k, d};
}

}  // namespace skewcert
