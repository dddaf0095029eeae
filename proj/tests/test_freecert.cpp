#include "doctest.h"

#include "skewcert/error.hpp"
#include "skewcert/freecert.hpp"
#include "skewcert/parser.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <set>

using namespace skewcert;
using testsupport::rf;
using testsupport::xy;

namespace {

RatFunc sf(const char* text) { return parse_ratfunc(text, make_vars({"s"})); }

DimensionOptions symbolic_only() {
  DimensionOptions o;
  o.allow_line = false;
  return o;
}

DimensionOptions line_first() {
  DimensionOptions o;
  o.prefer_line = true;
  return o;
}

// Distinct values x^(m - |S| + sum S) y^|S| over subsets S of {0..m-1}.
std::size_t monomial_growth_count(unsigned m) {
  std::set<std::pair<unsigned, unsigned>> seen;
  for (unsigned S = 0; S < (1u << m); ++S) {
    unsigned size = 0, sum = 0;
    for (unsigned i = 0; i < m; ++i)
      if (S >> i & 1) ++size, sum += i;
    seen.insert({size, sum});
  }
  return seen.size();
}

}  // namespace

TEST_CASE("graded_dimension examples") {
  CHECK(graded_dimension(testsupport::henon_map(), rf("x"), rf("y"), 1, 2) == 8);
  CHECK(graded_dimension(testsupport::monomial_map(), rf("x"), rf("y"), 2, 3) == 15);
  CHECK(monomial_growth_count(4) == 15);
  CHECK(graded_dimension(testsupport::cremona_involution(), rf("x+1"), rf("y/x"), 3, 0) == 2);
  CHECK(graded_dimension(testsupport::henon_map(), rf("x"), rf("3*x"), 1, 0) == 1);
}

TEST_CASE("rank routes agree with the evaluation oracle") {
  struct Case {
    FieldEndo s;
    const char *a, *b;
    unsigned n, jmax;
  };
  Case cases[] = {
      {testsupport::henon_map(), "x", "y", 1, 4},
      {testsupport::henon_map(), "1", "x/y", 1, 3},
      {testsupport::monomial_map(), "x", "y", 2, 4},
      {testsupport::monomial_map(), "x", "y", 1, 4},
      {testsupport::cremona_involution(), "x+1", "y/x", 1, 3},
      {testsupport::cremona_involution(), "x", "1/x", 1, 2},
      {FieldEndo::identity(xy()), "x", "y", 1, 3},
      {testsupport::swap_map(), "x", "y", 1, 3},
  };
  for (auto& c : cases) {
    DimensionEngine sym(c.s, rf(c.a), rf(c.b), c.n, symbolic_only());
    DimensionEngine line(c.s, rf(c.a), rf(c.b), c.n, line_first());
    for (unsigned j = 0; j <= c.jmax; ++j) {
      CAPTURE(c.a);
      CAPTURE(c.b);
      CAPTURE(j);
      std::size_t r = sym.level(j).dim;
      for (std::uint64_t seed : {1, 2, 3})
        CHECK(testsupport::evaluation_rank(c.s, rf(c.a), rf(c.b), c.n, j, seed) == r);
      CHECK(line.level(j).dim == r);
    }
  }
}

TEST_CASE("deep Henon levels agree with the modular oracle") {
  FieldEndo h = testsupport::henon_map();
  DimensionEngine E(h, rf("x"), rf("y"), 4, {});
  for (unsigned j = 0; j <= 3; ++j)
    for (std::uint64_t seed : {1, 2, 3})
      CHECK(testsupport::evaluation_rank_mod(h, rf("x"), rf("y"), 4, j, seed) == E.level(j).dim);
}

TEST_CASE("certify_free examples") {
  FieldEndo m = testsupport::monomial_map();
  auto c = certify_free(m, rf("x"), rf("y"), 2, 3);
  CHECK_FALSE(c.free);
  CHECK(c.at_degree == 8);
  CHECK(c.dims == std::vector<std::size_t>{2, 4, 8, 15});
  std::set<std::string> support;
  for (const auto& t : c.witness) support.insert(t.word);
  CHECK(support == std::set<std::string>{"ABBA", "BAAB"});
  CHECK(expand_witness(c.witness, rf("x"), rf("y"), m, 2).is_zero());
  CHECK(c.verdict() == "NotFree(at t-degree 8)");

  FieldEndo h = testsupport::henon_map();
  auto p = certify_free(h, rf("x"), rf("3*x"), 1, 4);
  CHECK_FALSE(p.free);
  CHECK(p.dims == std::vector<std::size_t>{1});
  CHECK(p.at_degree == 1);
  CHECK(expand_witness(p.witness, rf("x"), rf("3*x"), h, 1).is_zero());

  auto f = certify_free(h, rf("x"), rf("y"), 4, 3);
  CHECK(f.free);
  CHECK(f.dims == std::vector<std::size_t>{2, 4, 8, 16});
  CHECK(f.verdict() == "FreeUpTo(3)");
}

TEST_CASE("certificate invariants and witness soundness") {
  struct Case {
    FieldEndo s;
    const char *a, *b;
    unsigned n;
  };
  Case cases[] = {
      {testsupport::monomial_map(), "x", "y", 1},
      {testsupport::monomial_map(), "x", "y", 3},
      {testsupport::monomial_map(), "x+1", "y", 2},
      {FieldEndo::identity(xy()), "x", "y", 1},
      {FieldEndo::identity(xy()), "x/(y+1)", "x^2-y", 2},
      {testsupport::swap_map(), "x", "y", 2},
      {testsupport::swap_map(), "x", "y", 1},
      {testsupport::cremona_involution(), "x", "1/x", 2},
      {testsupport::henon_map(), "x", "y", 1},
  };
  for (auto& c : cases) {
    CAPTURE(c.a);
    auto cert = certify_free(c.s, rf(c.a), rf(c.b), c.n, 4);
    for (std::size_t j = 0; j < cert.dims.size(); ++j) {
      CHECK(cert.dims[j] <= (std::size_t(1) << (j + 1)));
      if (j) CHECK(cert.dims[j] <= 2 * cert.dims[j - 1]);
    }
    auto shorter = certify_free(c.s, rf(c.a), rf(c.b), c.n, 2);
    for (std::size_t j = 0; j < shorter.dims.size(); ++j) CHECK(shorter.dims[j] == cert.dims[j]);
    if (!cert.free) {
      CHECK_FALSE(cert.witness.empty());
      CHECK(expand_witness(cert.witness, rf(c.a), rf(c.b), c.s, c.n).is_zero());
    }
  }
}

TEST_CASE("certificate json") {
  auto c = certify_free(testsupport::monomial_map(), rf("x"), rf("y"), 2, 3);
  auto j = c.to_json();
  CHECK(j["step"] == 2);
  CHECK(j["dims"].size() == 4);
  CHECK(j["witness"].size() == 2);
  CHECK(j["map"]["images"][1] == "x*y");
  CHECK(j["gens"][1] == "y");
  CHECK(j.contains("scope"));
  auto f = certify_free(testsupport::henon_map(), rf("x"), rf("y"), 1, 2).to_json();
  CHECK(f["verdict"] == "FreeUpTo(2)");
  CHECK_FALSE(f.contains("witness"));
}

TEST_CASE("restrict_to_curve examples") {
  auto C = CurveRestriction::parse("s,3", 2);
  auto r = restrict_to_curve(rf("x/y"), C);
  CHECK(r.value == sf("s/3"));
  CHECK(r.degree == 1);
  CHECK(restrict_to_curve(rf("7/2"), C).degree == 0);
  auto h = restrict_to_curve(testsupport::henon_map().apply(rf("x/y")), C);
  CHECK(h.value == sf("(4-s^2)/s"));
  CHECK(h.degree == 2);
  CHECK_THROWS_WITH_AS(restrict_to_curve(rf("1/(y-3)"), C), "curve inside polar locus", Error);
  CHECK_THROWS_AS(CurveRestriction::parse("1,3", 2), Error);
  CHECK_THROWS_AS(CurveRestriction::parse("s", 2), Error);
}

TEST_CASE("doubling_profile examples") {
  auto C = CurveRestriction::parse("s,3", 2);
  auto h = doubling_profile(testsupport::henon_map(), rf("x/y"), C, 1, 3);
  CHECK(h.degrees == std::vector<int>{1, 2, 4, 8});
  CHECK(h.holds);
  CHECK(h.validity_log.size() >= 4);

  auto m = doubling_profile(testsupport::monomial_map(), rf("y"), C, 1, 3);
  CHECK(m.degrees == std::vector<int>{0, 1, 2, 3});
  CHECK_FALSE(m.holds);

  auto k = doubling_profile(testsupport::henon_map(), rf("5"), C, 1, 3);
  CHECK(k.degrees == std::vector<int>{0, 0, 0, 0});
  CHECK_FALSE(k.holds);

  CHECK_THROWS_WITH_AS(doubling_profile(testsupport::henon_map(), rf("x/(y-3)"), C, 1, 2),
                       "j=0: curve inside polar locus", Error);
  // sigma(y - 3) = x - 3 vanishes on x = 3.
  auto V = CurveRestriction::parse("3,s", 2);
  CHECK_THROWS_WITH_AS(doubling_profile(testsupport::henon_map(), rf("1/(y-3)"), V, 1, 2),
                       "j=1: curve inside polar locus", Error);
}

TEST_CASE("select_line picks the first valid seed") {
  FieldEndo h = testsupport::henon_map();
  auto C = select_line(h, rf("x/y"), 1, 3);
  CHECK(C.param[1] == sf("3"));
  // x/(y-3) has a pole along y = 3, so the next seed is used.
  auto D = select_line(h, rf("x/(y-3)"), 1, 2);
  CHECK(D.param[1] == sf("5"));
}

TEST_CASE("doubling on a curve forces full rank") {
  FieldEndo h = testsupport::henon_map();
  auto C = CurveRestriction::parse("s,3", 2);
  auto P = doubling_profile(h, rf("x/y"), C, 1, 3);
  REQUIRE(P.holds);
  for (unsigned j = 0; j <= 3; ++j) {
    // U_j = span{1, sigma^j(h)} restricted to C has dimension 2.
    auto u = restrict_to_curve(h.apply_power(rf("x/y"), j), C);
    CHECK(lemma63_check({sf("1")}, u.value).dim_TU == 2);
    CHECK(graded_dimension(h, rf("1"), rf("x/y"), 1, j) == (std::size_t(1) << (j + 1)));
  }
}

TEST_CASE("lemma63_check examples") {
  auto a = lemma63_check({sf("1")}, sf("s"));
  CHECK(a.dim_T == 1);
  CHECK(a.dim_TU == 2);
  CHECK(a.hypothesis_verified);
  CHECK(a.verdict == true);

  auto b = lemma63_check({sf("1"), sf("s"), sf("s^2")}, sf("s^7"));
  CHECK(b.dim_TU == 6);
  CHECK(b.verdict == true);

  auto c = lemma63_check({sf("1"), sf("s")}, sf("s"));
  CHECK_FALSE(c.hypothesis_verified);
  CHECK_FALSE(c.verdict.has_value());
  CHECK(c.dim_TU == 3);
  CHECK(c.status.rfind("hypothesis unverified", 0) == 0);

  auto d = lemma63_check({sf("1/s"), sf("1/(s+1)")}, sf("s^3"));
  CHECK(d.dim_T == 2);
  CHECK(d.hypothesis_verified);
  CHECK(d.dim_TU == 4);
}

TEST_CASE("power_lift_check examples") {
  FieldEndo h = testsupport::henon_map();
  auto r = power_lift_check(h, rf("x"), rf("y"), 1, 2, 3);
  CHECK(r.antecedent.free);
  CHECK(r.antecedent.depth == 6);
  CHECK(r.consequent.dims == std::vector<std::size_t>{2, 4, 8, 16});
  CHECK(r.implication_holds);
  CHECK(r.status == "implication holds");

  auto same = power_lift_check(h, rf("x"), rf("y"), 1, 1, 2);
  CHECK(same.antecedent.dims == same.consequent.dims);
  CHECK(same.antecedent.step == same.consequent.step);

  auto m = power_lift_check(testsupport::monomial_map(), rf("x"), rf("y"), 2, 2, 3);
  CHECK_FALSE(m.antecedent.free);
  CHECK(m.status == "antecedent false");
  CHECK(m.implication_holds);
}

TEST_CASE("growth_profile examples") {
  auto h = growth_profile(testsupport::henon_map(), {rf("x"), rf("y")}, 4, 4);
  CHECK(h.dims == std::vector<std::size_t>{2, 4, 8, 16});
  for (double r : h.ratios) CHECK(r == 2.0);
  CHECK(h.exponential);

  auto m = growth_profile(testsupport::monomial_map(), {rf("x"), rf("y")}, 10, 1);
  for (unsigned k = 1; k <= 10; ++k) CHECK(m.dims[k - 1] == monomial_growth_count(k));
  CHECK_FALSE(m.exponential);
  CHECK(m.estimate <= 3.0);
  CHECK(m.estimate > 2.0);

  auto one = growth_profile(testsupport::henon_map(), {rf("1")}, 5, 1);
  CHECK(one.dims == std::vector<std::size_t>(5, 1));
  CHECK_FALSE(one.exponential);
}
