#include "skewcert/ratfunc.hpp"

#include "skewcert/detail/substitute.hpp"
#include "skewcert/error.hpp"
#include "skewcert/polygcd.hpp"

#include <algorithm>

namespace skewcert {

namespace {

struct PolyRing {
  using value_type = MultiPoly;
  Vars vars;
  MultiPoly zero() const { return MultiPoly(vars); }
  MultiPoly constant(const Rational& c) const { return MultiPoly::constant(vars, c); }
  MultiPoly add(const MultiPoly& a, const MultiPoly& b) const { return a + b; }
  MultiPoly mul(const MultiPoly& a, const MultiPoly& b) const { return a * b; }
};

}  // namespace

RatFunc::RatFunc(const Vars& vars) : num_(vars), den_(MultiPoly::constant(vars, 1)) {}

RatFunc::RatFunc(MultiPoly p) : num_(std::move(p)), den_(MultiPoly::constant(num_.vars(), 1)) {}

RatFunc::RatFunc(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw Error("division by zero in function field");
  if (!same_vars(num_.vars(), den_.vars())) throw Error("fraction over different variable lists");
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.vars(), 1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = divide_exact(num_, g);
      den_ = divide_exact(den_, g);
    }
  }
  Rational c = den_.content();
  if (c != 1) {
    Rational ic = 1 / c;
    num_ = num_ * ic;
    den_ = den_ * ic;
  }
}

RatFunc::RatFunc(MultiPoly num, MultiPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(num_.vars(), 1);
    return;
  }
  Rational c = den_.content();
  if (c != 1) {
    Rational ic = 1 / c;
    num_ = num_ * ic;
    den_ = den_ * ic;
  }
}

RatFunc ratfunc_normalize(const MultiPoly& num, const MultiPoly& den) { return RatFunc(num, den); }

RatFunc RatFunc::constant(const Vars& vars, const Rational& c) {
  return RatFunc(MultiPoly::constant(vars, c));
}

RatFunc RatFunc::variable(const Vars& vars, std::size_t index) {
  return RatFunc(MultiPoly::variable(vars, index));
}

int RatFunc::degree_in(std::size_t v) const {
  return std::max(num_.degree_in(v), den_.degree_in(v));
}

RatFunc RatFunc::operator-() const { return RatFunc(-num_, den_, Reduced{}); }

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) {
    if (den_.is_constant()) return RatFunc(num_ + o.num_, den_, Reduced{});
    return RatFunc(num_ + o.num_, den_);
  }
  if (den_.is_constant() && o.den_.is_constant())
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_, Reduced{});
  MultiPoly g = gcd(den_, o.den_);
  MultiPoly b = divide_exact(den_, g), d = divide_exact(o.den_, g);
  return RatFunc(num_ * d + o.num_ * b, b * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero() || o.is_zero()) return RatFunc(vars());
  if (den_.is_constant() && o.den_.is_constant())
    return RatFunc(num_ * o.num_, den_ * o.den_, Reduced{});
  MultiPoly a = num_, b = den_, c = o.num_, d = o.den_;
  if (!d.is_constant()) {
    MultiPoly g = gcd(a, d);
    if (!g.is_constant()) {
      a = divide_exact(a, g);
      d = divide_exact(d, g);
    }
  }
  if (!b.is_constant()) {
    MultiPoly g = gcd(c, b);
    if (!g.is_constant()) {
      c = divide_exact(c, g);
      b = divide_exact(b, g);
    }
  }
  return RatFunc(a * c, b * d, Reduced{});
}

RatFunc RatFunc::operator*(const Rational& c) const {
  if (c == 0) return RatFunc(vars());
  return RatFunc(num_ * c, den_, Reduced{});
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw Error("division by zero in function field");
  return RatFunc(den_, num_, Reduced{});
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(unsigned(e)), den_.pow(unsigned(e)), Reduced{});
}

Rational RatFunc::evaluate(std::span<const Rational> point) const {
  Rational d = den_.evaluate(point);
  if (d == 0) throw Error("denominator vanishes at the evaluation point");
  return num_.evaluate(point) / d;
}

RatFunc RatFunc::substitute(std::span<const RatFunc> images) const {
  if (images.size() != nvars()) throw Error("substitution needs one image per variable");
  if (images.empty()) return *this;
  const Vars& target = images.front().vars();
  std::vector<MultiPoly> nums, dens;
  bool polynomial = true;
  for (const auto& g : images) {
    if (!same_vars(g.vars(), target)) throw Error("images over different variable lists");
    nums.push_back(g.num());
    dens.push_back(g.den());
    polynomial = polynomial && g.den().is_one();
  }
  MultiPoly n(target), d(target);
  if (polynomial) {
    n = num_.substitute(nums);
    d = den_.substitute(nums);
  } else {
    std::vector<unsigned> bounds(nvars());
    for (std::size_t i = 0; i < nvars(); ++i) bounds[i] = unsigned(std::max(0, degree_in(i)));
    PolyRing ring{target};
    detail::Substituter<PolyRing> sub(ring, std::span<const MultiPoly>(nums),
                                      std::span<const MultiPoly>(dens), bounds);
    n = sub.apply(num_);
    d = sub.apply(den_);
  }
  if (d.is_zero()) throw Error("endomorphism undefined on this element");
  return RatFunc(std::move(n), std::move(d));
}

RatFunc RatFunc::with_vars(const Vars& vars) const {
  return RatFunc(num_.with_vars(vars), den_.with_vars(vars), Reduced{});
}

std::string RatFunc::to_string() const {
  if (den_.is_one()) return num_.to_string();
  std::string n = num_.to_string(), d = den_.to_string();
  if (num_.term_count() > 1) n = "(" + n + ")";
  bool bare = den_.is_monomial() && den_.leading_coeff() == 1 &&
              std::count_if(den_.leading_term().exps.begin(), den_.leading_term().exps.end(),
                            [](std::uint32_t e) { return e > 0; }) == 1;
  if (!bare)
    d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace skewcert
