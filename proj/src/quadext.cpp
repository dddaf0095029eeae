#include "skewcert/quadext.hpp"

#include "skewcert/error.hpp"

#include <cctype>
#include <cmath>

namespace skewcert {

namespace {

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Sign of a + b*sqrt(d), d not a perfect square.
int sign_single(const Rational& a, const Rational& b, const Integer& d) {
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Rational diff = a * a - b * b * Rational(d);
  return diff > 0 ? sa : (diff < 0 ? sb : 0);
}

// Sign of r + u*sqrt(p) + v*sqrt(q), p != q squarefree.
int sign_double(const Rational& r, const Rational& u, const Integer& p, const Rational& v,
                const Integer& q) {
  int sx = sign_single(r, u, p), sy = sgn(v);
  if (sy == 0) return sx;
  if (sx == 0 || sx == sy) return sy;
  // |X| against |Y| through X^2 - Y^2 = (r^2 + p u^2 - q v^2) + 2 r u sqrt(p).
  int s = sign_single(r * r + Rational(p) * u * u - Rational(q) * v * v, 2 * r * u, p);
  return s == 0 ? 0 : (s > 0 ? sx : sy);
}

}  // namespace

QuadExt::QuadExt(const Rational& a, const Rational& b, const Integer& d) : a_(a), b_(b) {
  if (d <= 0) throw Error("QuadExt needs a positive radicand");
  if (b_ == 0) return;
  auto [k, f] = square_free_split(d);
  b_ *= Rational(k);
  d_ = f;
  if (d_ == 1) {
    a_ += b_;
    b_ = 0;
  }
}

QuadExt QuadExt::sqrt(const Integer& n) {
  if (n < 0) throw Error("square root of a negative number");
  if (n == 0) return QuadExt();
  return QuadExt(0, 1, n);
}

QuadExt QuadExt::operator+(const QuadExt& o) const {
  if (o.is_rational()) return QuadExt(a_ + o.a_, b_, d_);
  if (is_rational()) return QuadExt(a_ + o.a_, o.b_, o.d_);
  if (d_ != o.d_) throw Error("QuadExt arithmetic across different square roots");
  return QuadExt(a_ + o.a_, b_ + o.b_, d_);
}

QuadExt QuadExt::operator*(const QuadExt& o) const {
  if (o.is_rational()) return QuadExt(a_ * o.a_, b_ * o.a_, d_);
  if (is_rational()) return QuadExt(a_ * o.a_, a_ * o.b_, o.d_);
  if (d_ != o.d_) throw Error("QuadExt arithmetic across different square roots");
  return QuadExt(a_ * o.a_ + b_ * o.b_ * Rational(d_), a_ * o.b_ + b_ * o.a_, d_);
}

QuadExt QuadExt::operator/(const QuadExt& o) const {
  Rational n = o.norm();
  if (n == 0) throw Error("division by zero");
  QuadExt c = o.conjugate();
  return *this * c * QuadExt(Rational(1) / n);
}

QuadExt QuadExt::pow(long e) const {
  if (e < 0) return QuadExt(1) / pow(-e);
  QuadExt r(1), base = *this;
  while (e) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

std::vector<Rational> QuadExt::minimal_polynomial() const {
  if (is_rational()) return {-a_, 1};
  return {norm(), -trace(), 1};
}

int QuadExt::sign() const { return is_rational() ? sgn(a_) : sign_single(a_, b_, d_); }

double QuadExt::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(d_.get_d()); }

std::string QuadExt::to_string() const {
  if (is_rational()) return skewcert::to_string(a_);
  std::string root = "sqrt(" + skewcert::to_string(d_) + ")";
  Rational b = b_ < 0 ? Rational(-b_) : b_;
  std::string rad = b == 1 ? root : skewcert::to_string(b) + "*" + root;
  if (a_ == 0) return (b_ < 0 ? "-" : "") + rad;
  return skewcert::to_string(a_) + (b_ < 0 ? " - " : " + ") + rad;
}

int compare(const QuadExt& x, const QuadExt& y) {
  if (x.is_rational() || y.is_rational() || x.d() == y.d()) return (x - y).sign();
  return sign_double(x.a() - y.a(), x.b(), x.d(), -y.b(), y.d());
}

QuadExt parse_quadext(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty quadratic number");
  QuadExt acc(0);
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
    std::size_t j = i;
    while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '/')) ++j;
    const bool has_q = j > i;
    Rational q = has_q ? parse_rational(s.substr(i, j - i)) : Rational(1);
    i = j;
    const bool star = i < s.size() && s[i] == '*';
    if (star) ++i;
    if (star && !has_q) throw Error("malformed quadratic number '" + s + "'");
    if (s.compare(i, 5, "sqrt(") == 0) {
      std::size_t close = s.find(')', i);
      if (close == std::string::npos) throw Error("unbalanced sqrt in '" + s + "'");
      Integer n(s.substr(i + 5, close - i - 5));
      if (n < 0) throw Error("negative radicand in '" + s + "'");
      if (n != 0) acc += QuadExt(0, sign * q, n);
      i = close + 1;
    } else if (star || !has_q) {
      throw Error("malformed quadratic number '" + s + "'");
    } else {
      acc += QuadExt(sign * q);
    }
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw Error("malformed quadratic number '" + s + "'");
  }
  return acc;
}

}  // namespace skewcert
