#include "skewcert/polygcd.hpp"

#include "skewcert/error.hpp"
#include "skewcert/modular.hpp"

#include <algorithm>
#include <random>

namespace skewcert {

namespace {

MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.vars(), 1); }

MultiPoly lc_in(const MultiPoly& p, std::size_t v) { return p.coefficients_in(v).back(); }

MultiPoly content_in(const MultiPoly& p, std::size_t v) { return gcd(p.coefficients_in(v)); }

// Subresultant PRS in v; inputs primitive in v. Returns the gcd, primitive in v.
MultiPoly subresultant_gcd(MultiPoly A, MultiPoly B, std::size_t v) {
  if (A.degree_in(v) < B.degree_in(v)) std::swap(A, B);
  MultiPoly g = one_like(A), h = one_like(A);
  while (true) {
    int d = A.degree_in(v) - B.degree_in(v);
    MultiPoly R = pseudo_remainder(A, B, v);
    if (R.is_zero()) break;
    if (R.degree_in(v) == 0) return one_like(A);
    A = std::move(B);
    B = divide_exact(R, g * h.pow(unsigned(d)));
    g = lc_in(A, v);
    if (d == 1) {
      h = g;
    } else if (d > 1) {
      h = divide_exact(g.pow(unsigned(d)), h.pow(unsigned(d - 1)));
    }
  }
  return divide_exact(B, content_in(B, v)).primitive_part();
}

MultiPoly gcd_exact(const MultiPoly& A, const MultiPoly& B) {
  std::size_t v = A.nvars();
  for (std::size_t i = A.nvars(); i-- > 0;)
    if (A.depends_on(i) && B.depends_on(i)) {
      v = i;
      break;
    }
  if (v == A.nvars()) return one_like(A);
  MultiPoly cA = content_in(A, v), cB = content_in(B, v);
  MultiPoly c = gcd(cA, cB);
  MultiPoly g = subresultant_gcd(divide_exact(A, cA), divide_exact(B, cB), v);
  return (c * g).primitive_part();
}

}  // namespace

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, std::size_t v) {
  auto r = a.coefficients_in(v);
  auto bc = b.coefficients_in(v);
  if (bc.empty()) throw Error("pseudo-remainder by zero");
  int db = int(bc.size()) - 1;
  int steps = int(r.size()) - db;
  if (steps <= 0) return a;
  const MultiPoly lb = bc.back();
  auto deg = [&r]() {
    int d = int(r.size()) - 1;
    while (d >= 0 && r[d].is_zero()) --d;
    return d;
  };
  int dr = deg();
  while (dr >= db) {
    MultiPoly lr = r[dr];
    int shift = dr - db;
    for (int i = 0; i <= dr; ++i) r[i] = lb * r[i];
    for (int i = 0; i <= db; ++i) r[i + shift] -= lr * bc[i];
    --steps;
    dr = deg();
    r.resize(dr + 1, MultiPoly(a.vars()));
  }
  if (steps > 0) {
    MultiPoly f = lb.pow(unsigned(steps));
    for (auto& c : r) c = f * c;
  }
  return MultiPoly::from_coefficients_in(a.vars(), v, r);
}

bool certify_coprime(const MultiPoly& a, const MultiPoly& b, unsigned attempts) {
  std::mt19937_64 rng(0x5eed0000ULL + a.term_count() * 131 + b.term_count());
  auto primes = word_primes();
  for (unsigned t = 0; t < attempts; ++t) {
    PrimeField F(primes[t % primes.size()]);
    std::uniform_int_distribution<std::uint64_t> dist(1, F.p() - 1);
    std::vector<std::uint64_t> c(a.nvars()), d(a.nvars());
    for (auto& x : c) x = dist(rng);
    for (auto& x : d) x = dist(rng);
    try {
      auto ra = modpoly::restrict_line(F, a, c, d);
      if (modpoly::degree(ra) != a.total_degree()) continue;
      auto rb = modpoly::restrict_line(F, b, c, d);
      if (modpoly::degree(rb) != b.total_degree()) continue;
      if (modpoly::degree(modpoly::gcd(F, ra, rb)) == 0) return true;
    } catch (const BadPrime&) {
      continue;
    }
  }
  return false;
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (!same_vars(a.vars(), b.vars())) throw Error("gcd of polynomials over different variables");
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  MultiPoly A = a.primitive_part(), B = b.primitive_part();
  if (A == B) return A;
  Exponents mA = A.min_exponents(), mB = B.min_exponents(), m(mA.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(mA[i], mB[i]);
  A = A.divide_monomial(mA);
  B = B.divide_monomial(mB);
  MultiPoly mono = MultiPoly::monomial(a.vars(), m, 1);
  if (A.is_constant() || B.is_constant()) return mono;
  const MultiPoly& small = A.total_degree() <= B.total_degree() ? A : B;
  const MultiPoly& big = A.total_degree() <= B.total_degree() ? B : A;
  if (certify_coprime(A, B)) return mono;
  if (try_divide(big, small)) return small.multiply_monomial(m);
  return gcd_exact(A, B).multiply_monomial(m);
}

MultiPoly gcd(const std::vector<MultiPoly>& polys) {
  if (polys.empty()) throw Error("gcd of an empty list");
  MultiPoly g(polys.front().vars());
  // Smallest first so the running gcd shrinks early.
  std::vector<const MultiPoly*> order;
  for (const auto& p : polys) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const MultiPoly* x, const MultiPoly* y) { return x->term_count() < y->term_count(); });
  for (const MultiPoly* p : order) {
    g = gcd(g, *p);
    if (g.is_constant() && !g.is_zero()) return g;
  }
  return g;
}

}  // namespace skewcert
