#include "skewcert/unipoly.hpp"

#include "skewcert/error.hpp"

#include <algorithm>

namespace skewcert {

namespace {

int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

}  // namespace

UniPoly::UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UniPoly UniPoly::constant(const Rational& c) { return UniPoly({c}); }
UniPoly UniPoly::x() { return UniPoly({Rational(0), Rational(1)}); }
UniPoly UniPoly::linear(const Rational& r) { return UniPoly({-r, Rational(1)}); }

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rational& UniPoly::lc() const {
  if (c_.empty()) throw Error("leading coefficient of the zero polynomial");
  return c_.back();
}

Rational UniPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

QuadExt UniPoly::operator()(const QuadExt& x) const {
  QuadExt acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + QuadExt(*it);
  return acc;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) + o.coeff(i);
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = coeff(i) - o.coeff(i);
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UniPoly(std::move(r));
}

UniPoly UniPoly::operator*(const Rational& c) const {
  std::vector<Rational> r = c_;
  for (auto& x : r) x *= c;
  return UniPoly(std::move(r));
}

UniPoly UniPoly::derivative() const {
  std::vector<Rational> r;
  for (std::size_t i = 1; i < c_.size(); ++i) r.push_back(c_[i] * Rational(long(i)));
  return UniPoly(std::move(r));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / lc());
}

UniPoly UniPoly::primitive() const {
  if (is_zero()) return *this;
  Integer l = 1, g = 0;
  for (const auto& x : c_) l = lcm(l, x.get_den());
  std::vector<Rational> r;
  for (const auto& x : c_) {
    r.push_back(x * Rational(l));
    g = gcd(g, r.back().get_num());
  }
  if (r.back() < 0) g = -g;
  for (auto& x : r) x /= Rational(g);
  return UniPoly(std::move(r));
}

bool UniPoly::is_integral() const {
  return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.get_den() == 1; });
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = degree(); k >= 0; --k) {
    const Rational& c = c_[std::size_t(k)];
    if (c == 0) continue;
    Rational a = abs(c);
    if (s.empty())
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (mono.empty())
      s += skewcert::to_string(a);
    else if (a == 1)
      s += mono;
    else
      s += skewcert::to_string(a) + "*" + mono;
  }
  return s;
}

std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> r = a.coeffs();
  if (a.degree() < b.degree()) return {UniPoly(), a};
  std::vector<Rational> q(std::size_t(a.degree() - b.degree() + 1));
  const Rational inv = 1 / b.lc();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    Rational f = r[std::size_t(k + b.degree())] * inv;
    q[std::size_t(k)] = f;
    if (f == 0) continue;
    for (int i = 0; i <= b.degree(); ++i) r[std::size_t(k + i)] -= f * b.coeffs()[std::size_t(i)];
  }
  return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = divrem(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

UniPoly square_free_part(const UniPoly& p) {
  if (p.degree() <= 0) return p.monic();
  UniPoly g = gcd(p, p.derivative());
  return divrem(p, g).first.monic();
}

UniPoly charpoly(const RatMatrix& M) {
  if (!M.is_square()) throw Error("characteristic polynomial of a non-square matrix");
  const std::size_t n = M.rows();
  std::vector<Rational> c(n + 1);
  c[n] = 1;
  RatMatrix Mk(n, n);  // M_0 = 0
  for (std::size_t k = 1; k <= n; ++k) {
    RatMatrix next = M * Mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    Mk = std::move(next);
    RatMatrix AM = M * Mk;
    Rational tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += AM(i, i);
    c[n - k] = -tr / Rational(long(k));
  }
  return UniPoly(std::move(c));
}

SturmSequence::SturmSequence(const UniPoly& p) {
  seq_.push_back(p);
  seq_.push_back(p.derivative());
  while (!seq_.back().is_zero()) {
    UniPoly r = divrem(seq_[seq_.size() - 2], seq_.back()).second;
    if (r.is_zero()) break;
    // Positive rescaling keeps the sign pattern.
    Rational s = abs(r.lc());
    seq_.push_back(r * Rational(-1 / s));
  }
  if (seq_.back().is_zero()) seq_.pop_back();
}

int SturmSequence::variations(const Rational& x) const {
  int v = 0, last = 0;
  for (const auto& q : seq_) {
    int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

int SturmSequence::count(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

Rational cauchy_bound(const UniPoly& p) {
  if (p.degree() <= 0) return 1;
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeffs()[std::size_t(i)] / p.lc())));
  return 1 + m;
}

std::vector<RootInterval> isolate_real_roots(const UniPoly& p0) {
  std::vector<RootInterval> out;
  if (p0.degree() <= 0) return out;
  UniPoly p = square_free_part(p0);
  SturmSequence S(p);
  Rational B = cauchy_bound(p) + 1;
  struct Job {
    Rational a, b;
    int n;
  };
  std::vector<Job> stack{{-B, B, S.count(-B, B)}};
  while (!stack.empty()) {
    Job j = stack.back();
    stack.pop_back();
    if (j.n == 0) continue;
    if (j.n == 1) {
      out.push_back({j.a, j.b});
      continue;
    }
    // Split away from roots so every endpoint stays a non-root.
    Rational w = j.b - j.a;
    Rational m = j.a + w / 2;
    for (long k = 3; p(m) == 0; k += 2) m = j.a + w * make_rational(k - 1, 2 * k);
    int left = S.count(j.a, m);
    stack.push_back({m, j.b, j.n - left});
    stack.push_back({j.a, m, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& x, const RootInterval& y) { return x.lo < y.lo; });
  return out;
}

void refine_root(const UniPoly& p, RootInterval& r, const Rational& width) {
  if (r.exact()) return;
  int slo = sgn(p(r.lo));
  if (slo == 0) {
    r.hi = r.lo;
    return;
  }
  while (r.width() >= width) {
    Rational m = r.mid();
    int sm = sgn(p(m));
    if (sm == 0) {
      r.lo = r.hi = m;
      return;
    }
    if (sm == slo)
      r.lo = m;
    else
      r.hi = m;
  }
}

}  // namespace skewcert
