#include "skewcert/multipoly.hpp"

#include "skewcert/detail/substitute.hpp"
#include "skewcert/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace skewcert {

namespace {

struct GrlexGreaterCmp {
  bool operator()(const Exponents& a, const Exponents& b) const { return grlex_greater(a, b); }
};

std::uint32_t degree_of(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

// Packed keys: total degree in bits 48..63, then up to three exponents of 16
// bits each. Packing is additive, and integer order equals graded-lex order.
constexpr std::uint32_t kPackLimit = 1u << 16;

std::uint64_t pack(const Exponents& e) {
  std::uint64_t key = std::uint64_t(degree_of(e)) << 48;
  for (std::size_t i = 0; i < e.size(); ++i) key |= std::uint64_t(e[i]) << (32 - 16 * i);
  return key;
}

Exponents unpack(std::uint64_t key, std::size_t n) {
  Exponents e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = std::uint32_t((key >> (32 - 16 * i)) & 0xffff);
  return e;
}

void require_same(const MultiPoly& a, const MultiPoly& b) {
  if (!same_vars(a.vars(), b.vars())) throw Error("polynomials over different variable lists");
}

struct PolyRing {
  using value_type = MultiPoly;
  Vars vars;
  MultiPoly zero() const { return MultiPoly(vars); }
  MultiPoly constant(const Rational& c) const { return MultiPoly::constant(vars, c); }
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const { return a + b; }
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const { return a * b; }
};

struct RationalRing {
  using value_type = Rational;
  Rational zero() const { return 0; }
  Rational constant(const Rational& c) const { return c; }
  Rational add(const Rational& a, const Rational& b) const { return a + b; }
  Rational mul(const Rational& a, const Rational& b) const { return a * b; }
};

}  // namespace

Vars make_vars(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_vars(const Vars& a, const Vars& b) { return a == b || *a == *b; }

bool grlex_greater(const Exponents& a, const Exponents& b) {
  auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

MultiPoly::MultiPoly(Vars vars) : vars_(std::move(vars)) {
  if (!vars_) throw Error("polynomial without a variable list");
}

MultiPoly MultiPoly::constant(Vars vars, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (c != 0) p.terms_.push_back({Exponents(p.nvars(), 0), c});
  return p;
}

MultiPoly MultiPoly::variable(Vars vars, std::size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.nvars()) throw Error("variable index out of range");
  Exponents e(p.nvars(), 0);
  e[index] = 1;
  p.terms_.push_back({std::move(e), Rational(1)});
  return p;
}

MultiPoly MultiPoly::monomial(Vars vars, Exponents exps, const Rational& c) {
  MultiPoly p(std::move(vars));
  if (exps.size() != p.nvars()) throw Error("exponent vector length mismatch");
  if (c != 0) p.terms_.push_back({std::move(exps), c});
  return p;
}

MultiPoly MultiPoly::from_terms(Vars vars, std::vector<Term> terms) {
  MultiPoly p(std::move(vars));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.exps, b.exps); });
  for (auto& t : terms) {
    if (t.exps.size() != p.nvars()) throw Error("exponent vector length mismatch");
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_[0].exps) == 0);
}

bool MultiPoly::is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == 1; }

Rational MultiPoly::constant_value() const {
  if (!is_constant()) throw Error("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

int MultiPoly::total_degree() const {
  return terms_.empty() ? -1 : int(degree_of(terms_.front().exps));
}

int MultiPoly::degree_in(std::size_t v) const {
  if (terms_.empty()) return -1;
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[v]);
  return int(d);
}

bool MultiPoly::is_homogeneous() const {
  for (const auto& t : terms_)
    if (int(degree_of(t.exps)) != total_degree()) return false;
  return true;
}

const Term& MultiPoly::leading_term() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return terms_.front();
}

bool MultiPoly::is_integral() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff.get_den() == 1; });
}

Rational MultiPoly::content() const {
  if (terms_.empty()) return 1;
  Integer g = 0, l = 1;
  for (const auto& t : terms_) {
    g = gcd(g, t.coeff.get_num());
    l = lcm(l, t.coeff.get_den());
  }
  Rational c = make_rational(g, l);
  if (terms_.front().coeff < 0) c = -c;
  return c;
}

MultiPoly MultiPoly::primitive_part() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  if (c == 1) return *this;
  return *this * Rational(1 / c);
}

Exponents MultiPoly::min_exponents() const {
  Exponents m(nvars(), 0);
  if (terms_.empty()) return m;
  m = terms_.front().exps;
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exps[i]);
  return m;
}

MultiPoly MultiPoly::divide_monomial(const Exponents& m) const {
  MultiPoly r(vars_);
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (t.exps[i] < m[i]) throw Error("monomial does not divide polynomial");
      t.exps[i] -= m[i];
    }
  return r;
}

MultiPoly MultiPoly::multiply_monomial(const Exponents& m) const {
  MultiPoly r(vars_);
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    for (std::size_t i = 0; i < m.size(); ++i) t.exps[i] += m[i];
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  require_same(*this, o);
  MultiPoly r(vars_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && grlex_greater(a->exps, b->exps))) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || grlex_greater(b->exps, a->exps)) {
      r.terms_.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (c != 0) r.terms_.push_back({a->exps, std::move(c)});
      ++a;
      ++b;
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator*(const Rational& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p * c; }

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  require_same(*this, o);
  if (is_zero() || o.is_zero()) return MultiPoly(vars_);
  if (o.is_constant()) return *this * o.constant_value();
  if (is_constant()) return o * constant_value();
  if (o.is_monomial()) return multiply_monomial(o.terms_[0].exps) * o.terms_[0].coeff;
  if (is_monomial()) return o.multiply_monomial(terms_[0].exps) * terms_[0].coeff;

  const std::size_t n = nvars();
  const bool packable =
      n <= 3 && std::uint32_t(total_degree() + o.total_degree()) < kPackLimit;
  const bool integral = is_integral() && o.is_integral();
  MultiPoly r(vars_);

  if (packable) {
    std::vector<std::uint64_t> ka(terms_.size()), kb(o.terms_.size());
    for (std::size_t i = 0; i < ka.size(); ++i) ka[i] = pack(terms_[i].exps);
    for (std::size_t j = 0; j < kb.size(); ++j) kb[j] = pack(o.terms_[j].exps);
    std::vector<std::uint64_t> keys;
    auto finish = [&](auto& acc) {
      keys.reserve(acc.size());
      for (const auto& [k, c] : acc)
        if (c != 0) keys.push_back(k);
      std::sort(keys.begin(), keys.end(), std::greater<>());
      r.terms_.reserve(keys.size());
    };
    const std::size_t hint = std::min<std::size_t>(ka.size() * kb.size(), std::size_t(1) << 20);
    if (integral) {
      std::unordered_map<std::uint64_t, Integer> acc;
      acc.reserve(hint);
      for (std::size_t i = 0; i < ka.size(); ++i) {
        mpz_srcptr x = terms_[i].coeff.get_num_mpz_t();
        for (std::size_t j = 0; j < kb.size(); ++j)
          mpz_addmul(acc[ka[i] + kb[j]].get_mpz_t(), x, o.terms_[j].coeff.get_num_mpz_t());
      }
      finish(acc);
      for (auto k : keys) r.terms_.push_back({unpack(k, n), Rational(acc[k])});
    } else {
      std::unordered_map<std::uint64_t, Rational> acc;
      acc.reserve(hint);
      for (std::size_t i = 0; i < ka.size(); ++i)
        for (std::size_t j = 0; j < kb.size(); ++j)
          acc[ka[i] + kb[j]] += terms_[i].coeff * o.terms_[j].coeff;
      finish(acc);
      for (auto k : keys) r.terms_.push_back({unpack(k, n), acc[k]});
    }
    return r;
  }

  std::map<Exponents, Rational, GrlexGreaterCmp> acc;
  Exponents e(n);
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = a.exps[i] + b.exps[i];
      acc[e] += a.coeff * b.coeff;
    }
  for (auto& [k, c] : acc)
    if (c != 0) r.terms_.push_back({k, c});
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(vars_, 1), base = *this;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (!same_vars(vars_, o.vars_) || terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exps != o.terms_[i].exps || terms_[i].coeff != o.terms_[i].coeff) return false;
  return true;
}

std::size_t MultiPoly::hash() const {
  std::size_t h = terms_.size();
  auto mix = [&h](std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
  for (const auto& t : terms_) {
    for (auto x : t.exps) mix(x);
    mix(mpz_get_ui(t.coeff.get_num_mpz_t()));
    mix(mpz_sgn(t.coeff.get_num_mpz_t()) + 1);
    mix(mpz_get_ui(t.coeff.get_den_mpz_t()));
  }
  return h;
}

Rational MultiPoly::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw Error("evaluation point has the wrong dimension");
  RationalRing ring;
  detail::Substituter<RationalRing> sub(ring, point);
  return sub.apply(*this);
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (images.size() != nvars()) throw Error("substitution needs one image per variable");
  if (images.empty()) throw Error("substitution into a polynomial without variables");
  for (const auto& g : images) require_same(g, images.front());
  PolyRing ring{images.front().vars()};
  detail::Substituter<PolyRing> sub(ring, images);
  return sub.apply(*this);
}

MultiPoly MultiPoly::derivative(std::size_t v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[v] == 0) continue;
    Term d{t.exps, t.coeff * Rational(t.exps[v])};
    --d.exps[v];
    out.push_back(std::move(d));
  }
  return from_terms(vars_, std::move(out));
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t v) const {
  int d = degree_in(v);
  std::vector<std::vector<Term>> buckets(d < 0 ? 0 : d + 1);
  for (const auto& t : terms_) {
    Term c = t;
    c.exps[v] = 0;
    buckets[t.exps[v]].push_back(std::move(c));
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(vars_, std::move(b)));
  return out;
}

MultiPoly MultiPoly::from_coefficients_in(const Vars& vars, std::size_t v,
                                          const std::vector<MultiPoly>& coeffs) {
  std::vector<Term> out;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    for (const auto& t : coeffs[k].terms()) {
      Term c = t;
      c.exps[v] += std::uint32_t(k);
      out.push_back(std::move(c));
    }
  return from_terms(vars, std::move(out));
}

MultiPoly MultiPoly::with_vars(Vars vars) const {
  if (vars->size() != nvars()) throw Error("variable list size mismatch");
  MultiPoly r(std::move(vars));
  r.terms_ = terms_;
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += (*vars_)[i];
      if (t.exps[i] > 1) mono += "^" + std::to_string(t.exps[i]);
    }
    if (mono.empty()) {
      os << skewcert::to_string(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << skewcert::to_string(c) << "*" << mono;
    }
  }
  return os.str();
}

std::optional<MultiPoly> try_divide(const MultiPoly& a, const MultiPoly& b) {
  require_same(a, b);
  if (b.is_zero()) throw Error("division by the zero polynomial");
  if (a.is_zero()) return a;
  if (b.is_constant()) return a * Rational(1 / b.constant_value());
  for (std::size_t v = 0; v < a.nvars(); ++v)
    if (a.degree_in(v) < b.degree_in(v)) return std::nullopt;
  if (b.is_monomial()) {
    const auto& m = b.leading_term().exps;
    for (const auto& t : a.terms())
      for (std::size_t i = 0; i < m.size(); ++i)
        if (t.exps[i] < m[i]) return std::nullopt;
    return a.divide_monomial(m) * Rational(1 / b.leading_coeff());
  }

  std::map<Exponents, Rational, GrlexGreaterCmp> rem;
  for (const auto& t : a.terms()) rem.emplace(t.exps, t.coeff);
  const Term& lb = b.leading_term();
  std::vector<Term> quotient;
  Exponents qe(a.nvars()), e(a.nvars());
  while (!rem.empty()) {
    auto it = rem.begin();
    for (std::size_t i = 0; i < qe.size(); ++i) {
      if (it->first[i] < lb.exps[i]) return std::nullopt;
      qe[i] = it->first[i] - lb.exps[i];
    }
    Rational qc = it->second / lb.coeff;
    for (const auto& t : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.exps[i] + qe[i];
      auto [pos, inserted] = rem.try_emplace(e, 0);
      pos->second -= qc * t.coeff;
      if (pos->second == 0) rem.erase(pos);
    }
    quotient.push_back({qe, qc});
  }
  return MultiPoly::from_terms(a.vars(), std::move(quotient));
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  auto q = try_divide(a, b);
  if (!q) throw Error("inexact polynomial division");
  return *q;
}

}  // namespace skewcert
