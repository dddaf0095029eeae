#include "skewcert/skewring.hpp"

#include "skewcert/error.hpp"
#include "skewcert/parser.hpp"

namespace skewcert {

namespace {

void require_same_sigma(const SkewElement& u, const SkewElement& v) {
  if (!u.sigma().same_as(v.sigma())) throw Error("skew elements over different endomorphisms");
}

}  // namespace

SkewElement::SkewElement(FieldEndo sigma) : sigma_(std::move(sigma)) {}

SkewElement::SkewElement(FieldEndo sigma, std::map<long, RatFunc> coeffs) : sigma_(std::move(sigma)) {
  for (auto& [m, f] : coeffs) {
    if (!same_vars(f.vars(), sigma_.vars())) throw Error("coefficient over a different variable list");
    if (!f.is_zero()) coeffs_.emplace(m, std::move(f));
  }
}

SkewElement SkewElement::monomial(FieldEndo sigma, RatFunc f, long degree) {
  std::map<long, RatFunc> c;
  c.emplace(degree, std::move(f));
  return SkewElement(std::move(sigma), std::move(c));
}

SkewElement SkewElement::from_json(FieldEndo sigma, const nlohmann::json& literal) {
  SkewElement r(sigma);
  for (const auto& pair : literal) {
    if (!pair.is_array() || pair.size() != 2) throw Error("skew literal entries are [degree, text]");
    r = r + monomial(sigma, parse_ratfunc(pair[1].get<std::string>(), sigma.vars()),
                     pair[0].get<long>());
  }
  return r;
}

std::vector<long> SkewElement::support() const {
  std::vector<long> s;
  for (const auto& [m, f] : coeffs_) s.push_back(m);
  return s;
}

RatFunc SkewElement::coeff(long m) const {
  auto it = coeffs_.find(m);
  return it == coeffs_.end() ? RatFunc(sigma_.vars()) : it->second;
}

SkewElement SkewElement::operator+(const SkewElement& o) const {
  require_same_sigma(*this, o);
  std::map<long, RatFunc> c = coeffs_;
  for (const auto& [m, f] : o.coeffs_) {
    auto it = c.find(m);
    if (it == c.end()) {
      c.emplace(m, f);
    } else {
      it->second = it->second + f;
    }
  }
  return SkewElement(sigma_, std::move(c));
}

SkewElement SkewElement::operator-() const {
  std::map<long, RatFunc> c;
  for (const auto& [m, f] : coeffs_) c.emplace(m, -f);
  return SkewElement(sigma_, std::move(c));
}

SkewElement SkewElement::operator-(const SkewElement& o) const { return *this + (-o); }

SkewElement SkewElement::operator*(const SkewElement& o) const { return skew_mul(*this, o); }

SkewElement SkewElement::operator*(const Rational& c) const {
  std::map<long, RatFunc> r;
  for (const auto& [m, f] : coeffs_) r.emplace(m, f * c);
  return SkewElement(sigma_, std::move(r));
}

bool SkewElement::operator==(const SkewElement& o) const {
  require_same_sigma(*this, o);
  return coeffs_ == o.coeffs_;
}

nlohmann::json SkewElement::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [m, f] : coeffs_) j.push_back({m, f.to_string()});
  return j;
}

std::string SkewElement::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string s;
  for (const auto& [m, f] : coeffs_) {
    if (!s.empty()) s += " + ";
    s += "(" + f.to_string() + ")*t^" + std::to_string(m);
  }
  return s;
}

SkewElement skew_mul(const SkewElement& u, const SkewElement& v) {
  require_same_sigma(u, v);
  std::map<long, RatFunc> c;
  for (const auto& [m, f] : u.coeffs())
    for (const auto& [n, g] : v.coeffs()) {
      RatFunc term = f * u.sigma().apply_power(g, m);
      auto it = c.find(m + n);
      if (it == c.end()) {
        c.emplace(m + n, std::move(term));
      } else {
        it->second = it->second + term;
      }
    }
  return SkewElement(u.sigma(), std::move(c));
}

GaugeMap::GaugeMap(const RatFunc& a, const RatFunc& b, const RatFunc& c, const RatFunc& d,
                   FieldEndo sigma)
    : sigma_(std::move(sigma)), v_(sigma_.vars()) {
  if (a.is_zero() || b.is_zero() || c.is_zero() || d.is_zero())
    throw Error("gauge coefficients must be nonzero");
  if (a * d != b * c) throw Error("gauge condition ad=bc violated");
  v_ = c / a;
}

RatFunc GaugeMap::v_power(long m) const {
  RatFunc r = RatFunc::constant(sigma_.vars(), 1);
  if (m >= 0) {
    for (long k = 0; k < m; ++k) r = r * sigma_.apply_power(v_, k);
  } else {
    for (long k = m; k < 0; ++k) r = r / sigma_.apply_power(v_, k);
  }
  return r;
}

SkewElement GaugeMap::apply(const SkewElement& w) const {
  if (!w.sigma().same_as(sigma_)) throw Error("skew element over a different endomorphism");
  std::map<long, RatFunc> c;
  for (const auto& [m, f] : w.coeffs()) c.emplace(m, v_power(m) * f);
  return SkewElement(sigma_, std::move(c));
}

SkewElement gauge_transform(const RatFunc& a, const RatFunc& b, const RatFunc& c,
                            const RatFunc& d, const FieldEndo& sigma, const SkewElement& w) {
  return GaugeMap(a, b, c, d, sigma).apply(w);
}

RingConjugation::RingConjugation(const FieldEndo& pi, const FieldEndo& sigma)
    : pi_(pi), sigma_(sigma), tau_(sigma) {
  if (!pi.invertible()) throw Error("conjugating map is not invertible (no inverse supplied)");
  tau_ = compose(pi.inverse(), compose(sigma, pi));
}

SkewElement RingConjugation::apply(const SkewElement& w) const {
  if (!w.sigma().same_as(sigma_)) throw Error("skew element over a different endomorphism");
  FieldEndo pinv = pi_.inverse();
  std::map<long, RatFunc> c;
  for (const auto& [m, f] : w.coeffs()) c.emplace(m, pinv.apply(f));
  return SkewElement(tau_, std::move(c));
}

SkewElement conjugate_ring(const FieldEndo& pi, const SkewElement& w) {
  return RingConjugation(pi, w.sigma()).apply(w);
}

std::string word_label(std::size_t index, unsigned length) {
  std::string s(length, 'A');
  for (unsigned i = 0; i < length; ++i)
    if (index >> (length - 1 - i) & 1) s[i] = 'B';
  return s;
}

std::vector<WordProduct> enumerate_words(const RatFunc& a, const RatFunc& b, const FieldEndo& sigma,
                                         unsigned n, unsigned j) {
  if (n == 0) throw Error("step must be positive");
  if (a.is_zero() || b.is_zero()) throw Error("generators must be nonzero");
  std::vector<RatFunc> sa, sb;
  for (unsigned i = 0; i <= j; ++i) {
    sa.push_back(sigma.apply_power(a, long(n) * i));
    sb.push_back(sigma.apply_power(b, long(n) * i));
  }
  // Level-by-level prefix products keep binary order.
  std::vector<RatFunc> level{sa[0], sb[0]};
  for (unsigned i = 1; i <= j; ++i) {
    std::vector<RatFunc> next;
    next.reserve(level.size() * 2);
    for (const auto& p : level) {
      next.push_back(p * sa[i]);
      next.push_back(p * sb[i]);
    }
    level = std::move(next);
  }
  std::vector<WordProduct> out;
  out.reserve(level.size());
  for (std::size_t w = 0; w < level.size(); ++w)
    out.push_back({word_label(w, j + 1), n, level[w], long(n) * (j + 1)});
  return out;
}

SkewElement word_as_product(const std::string& letters, const RatFunc& a, const RatFunc& b,
                            const FieldEndo& sigma, unsigned n) {
  SkewElement acc = SkewElement::monomial(sigma, RatFunc::constant(sigma.vars(), 1), 0);
  for (char ch : letters)
    acc = skew_mul(acc, SkewElement::monomial(sigma, ch == 'A' ? a : b, long(n)));
  return acc;
}

}  // namespace skewcert
