#include "doctest.h"

#include "skewcert/error.hpp"
#include "skewcert/skewring.hpp"
#include "support/fixtures.hpp"
#include "support/random.hpp"

#include <set>

using namespace skewcert;
using testsupport::rf;
using testsupport::xy;

namespace {

SkewElement mono(const FieldEndo& s, const char* f, long m) { return SkewElement::monomial(s, rf(f), m); }

SkewElement random_element(std::mt19937_64& rng, const FieldEndo& s, long lo, long hi,
                           unsigned max_deg) {
  std::uniform_int_distribution<long> deg(lo, hi);
  std::uniform_int_distribution<int> count(1, 3);
  SkewElement e(s);
  int k = count(rng);
  for (int i = 0; i < k; ++i)
    e = e + SkewElement::monomial(s, testsupport::random_nonzero_ratfunc(rng, xy(), max_deg, 2),
                                  deg(rng));
  return e;
}

}  // namespace

TEST_CASE("skew_mul examples") {
  FieldEndo s = testsupport::monomial_map();
  CHECK(skew_mul(mono(s, "y", 1), mono(s, "y", 1)) == mono(s, "x*y^2", 2));
  FieldEndo h = testsupport::henon_map();
  RatFunc f = rf("x/(y+2)");
  CHECK(skew_mul(mono(h, "1", 1), SkewElement::monomial(h, f, 0)) ==
        SkewElement::monomial(h, h.apply(f), 1));
  SkewElement lhs = mono(s, "y", 2) * mono(s, "x", 2) * mono(s, "x", 2) * mono(s, "y", 2);
  SkewElement rhs = mono(s, "x", 2) * mono(s, "y", 2) * mono(s, "y", 2) * mono(s, "x", 2);
  CHECK(lhs == rhs);
  CHECK(lhs == mono(s, "x^8*y^2", 8));
}

TEST_CASE("skew_mul errors") {
  FieldEndo s = testsupport::monomial_map(), s2 = testsupport::monomial_map();
  CHECK_THROWS_AS(skew_mul(mono(s, "x", 1), mono(s2, "x", 1)), Error);
  FieldEndo noinv(xy(), {rf("x"), rf("x*y")});
  CHECK_THROWS_WITH_AS(skew_mul(mono(noinv, "x", -1), mono(noinv, "y", 0)), "σ⁻¹ unavailable", Error);
  CHECK_THROWS_AS((void)(mono(s, "x", 0) == mono(s2, "x", 0)), Error);
}

TEST_CASE("t f t^-1 = sigma(f)") {
  std::mt19937_64 rng(41);
  for (const auto& s : {testsupport::henon_map(), testsupport::cremona_involution()}) {
    for (int i = 0; i < 10; ++i) {
      RatFunc f = testsupport::random_ratfunc(rng, xy(), 2, 2);
      SkewElement t = mono(s, "1", 1), tinv = mono(s, "1", -1);
      CHECK(t * SkewElement::monomial(s, f, 0) * tinv == SkewElement::monomial(s, s.apply(f), 0));
    }
  }
}

TEST_CASE("associativity on random triples") {
  std::mt19937_64 rng(43);
  struct Case {
    FieldEndo s;
    long lo, hi;
    unsigned deg;
  };
  Case cases[] = {{testsupport::monomial_map(), -3, 3, 4},
                  {testsupport::cremona_involution(), -3, 3, 4},
                  {testsupport::henon_map(), -1, 2, 2}};
  for (auto& c : cases)
    for (int i = 0; i < 20; ++i) {
      SkewElement u = random_element(rng, c.s, c.lo, c.hi, c.deg);
      SkewElement v = random_element(rng, c.s, c.lo, c.hi, c.deg);
      SkewElement w = random_element(rng, c.s, c.lo, c.hi, c.deg);
      CHECK((u * v) * w == u * (v * w));
    }
}

TEST_CASE("gauge_transform examples and multiplicativity") {
  FieldEndo h = testsupport::henon_map();
  SkewElement w = mono(h, "x+y", 2) + mono(h, "1/x", -1);
  CHECK(gauge_transform(rf("x"), rf("y"), rf("x"), rf("y"), h, w) == w);
  RatFunc g = rf("x+3"), hh = rf("y/(x-1)");
  CHECK(gauge_transform(rf("1"), hh, g, g * hh, h, mono(h, "1", 1)) ==
        SkewElement::monomial(h, g, 1));
  CHECK_THROWS_WITH_AS(gauge_transform(rf("1"), rf("x"), rf("1"), rf("y"), h, w),
                       "gauge condition ad=bc violated", Error);

  GaugeMap psi(rf("x"), rf("y"), rf("x*(y+1)"), rf("y*(y+1)"), h);
  CHECK(psi.apply(mono(h, "x", 1)) == mono(h, "x*(y+1)", 1));
  CHECK(psi.apply(mono(h, "y", 1)) == mono(h, "y*(y+1)", 1));
  std::mt19937_64 rng(47);
  for (int i = 0; i < 12; ++i) {
    SkewElement a = random_element(rng, h, -1, 2, 2), b = random_element(rng, h, -1, 2, 2);
    CHECK(psi.apply(a * b) == psi.apply(a) * psi.apply(b));
    CHECK(psi.apply(a).support() == a.support());
  }
}

TEST_CASE("conjugate_ring examples and multiplicativity") {
  FieldEndo s = testsupport::monomial_map();
  SkewElement w = mono(s, "x", 1) + mono(s, "y^2", 3);
  RingConjugation id(FieldEndo::identity(xy()), s);
  CHECK(id.apply(w).coeffs() == w.coeffs());

  RingConjugation swap(testsupport::swap_map(), s);
  CHECK(swap.apply(mono(s, "x", 1)) == SkewElement::monomial(swap.target(), rf("y"), 1));
  // tau = swap sigma swap sends x -> xy, y -> y.
  CHECK(swap.target().images()[0] == rf("x*y"));
  CHECK(swap.target().images()[1] == rf("y"));

  FieldEndo noinv(xy(), {rf("x"), rf("x")});
  CHECK_THROWS_AS(conjugate_ring(noinv, w), Error);

  std::mt19937_64 rng(53);
  RingConjugation conj(testsupport::cremona_involution(), testsupport::henon_map());
  for (int i = 0; i < 10; ++i) {
    SkewElement a = random_element(rng, conj.source(), -1, 2, 2);
    SkewElement b = random_element(rng, conj.source(), -1, 2, 2);
    CHECK(conj.apply(a * b) == conj.apply(a) * conj.apply(b));
    CHECK(conj.apply(a).support() == a.support());
  }
}

TEST_CASE("enumerate_words examples") {
  FieldEndo s = testsupport::monomial_map();
  auto w0 = enumerate_words(rf("x"), rf("y"), s, 1, 0);
  REQUIRE(w0.size() == 2);
  CHECK(w0[0].letters == "A");
  CHECK(w0[1].value == rf("y"));

  auto w1 = enumerate_words(rf("x"), rf("y"), s, 1, 1);
  REQUIRE(w1.size() == 4);
  CHECK(w1[0].value == rf("x^2"));
  CHECK(w1[1].value == rf("x^2*y"));
  CHECK(w1[2].value == rf("x*y"));
  CHECK(w1[3].value == rf("x*y^2"));
  CHECK(w1[3].letters == "BB");
  CHECK(w1[3].degree == 2);

  auto w3 = enumerate_words(rf("x"), rf("y"), s, 2, 3);
  REQUIRE(w3.size() == 16);
  std::set<std::string> distinct;
  for (const auto& w : w3) distinct.insert(w.value.to_string());
  CHECK(distinct.size() == 15);
  CHECK(w3[6].letters == "ABBA");
  CHECK(w3[9].letters == "BAAB");
  CHECK(w3[6].value == w3[9].value);

  for (const auto& w : enumerate_words(rf("x"), rf("y/(x+1)"), testsupport::henon_map(), 1, 2))
    CHECK(word_as_product(w.letters, rf("x"), rf("y/(x+1)"), testsupport::henon_map(), 1)
              .coeff(w.degree) == w.value);
}
