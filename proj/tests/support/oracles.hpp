#pragma once

// Independent rank oracles: word values sampled at points instead of
// multiplied out symbolically. Each orbit starts at a random point and is
// pushed forward by the map, so sigma^k(f)(P) = f(phi^k(P)).

#include "skewcert/error.hpp"
#include "skewcert/fieldendo.hpp"
#include "skewcert/linalg.hpp"
#include "skewcert/modular.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <vector>

namespace testsupport {

namespace detail {

inline bool bit(std::size_t w, unsigned j, unsigned i) { return (w >> (j - i)) & 1; }

inline std::uint64_t eval_mod(const skewcert::PrimeField& F, const skewcert::MultiPoly& f,
                              const std::vector<std::uint64_t>& pt) {
  std::uint64_t acc = 0;
  for (const auto& t : f.terms()) {
    std::uint64_t v = F.reduce(t.coeff);
    for (std::size_t i = 0; i < pt.size(); ++i) v = F.mul(v, F.pow(pt[i], t.exps[i]));
    acc = F.add(acc, v);
  }
  return acc;
}

// Throws BadPrime for a vanishing denominator.
inline std::uint64_t eval_mod(const skewcert::PrimeField& F, const skewcert::RatFunc& f,
                              const std::vector<std::uint64_t>& pt) {
  std::uint64_t d = eval_mod(F, f.den(), pt);
  if (d == 0) throw skewcert::BadPrime("pole");
  return F.mul(eval_mod(F, f.num(), pt), F.inv(d));
}

}  // namespace detail

/// Rank of the words-by-points matrix of exact word values, using
/// (#words + 4) random rational starting points.
inline std::size_t evaluation_rank(const skewcert::FieldEndo& s, const skewcert::RatFunc& a,
                                   const skewcert::RatFunc& b, unsigned n, unsigned j,
                                   std::uint64_t seed) {
  using skewcert::Rational;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 9);
  const std::size_t words = std::size_t(1) << (j + 1);
  const std::size_t npts = words + 4;
  skewcert::RatMatrix M(words, npts);
  for (std::size_t p = 0; p < npts;) {
    std::vector<Rational> pt(s.nvars());
    for (auto& c : pt) c = skewcert::make_rational(num(rng), den(rng));
    std::vector<Rational> va, vb;
    try {
      for (unsigned k = 0;; ++k) {
        if (k % n == 0) {
          va.push_back(a.evaluate(pt));
          vb.push_back(b.evaluate(pt));
          if (va.size() == j + 1) break;
        }
        std::vector<Rational> next;
        for (const auto& g : s.images()) next.push_back(g.evaluate(pt));
        pt = std::move(next);
      }
    } catch (const skewcert::Error&) {
      continue;
    }
    for (std::size_t w = 0; w < words; ++w) {
      Rational v = 1;
      for (unsigned i = 0; i <= j; ++i) v *= detail::bit(w, j, i) ? vb[i] : va[i];
      M(w, p) = v;
    }
    ++p;
  }
  return skewcert::bareiss_rank(M);
}

/// Same oracle over F_p with random points in F_p; for deep orbits whose
/// exact heights grow too fast.
inline std::size_t evaluation_rank_mod(const skewcert::FieldEndo& s, const skewcert::RatFunc& a,
                                       const skewcert::RatFunc& b, unsigned n, unsigned j,
                                       std::uint64_t seed, std::uint64_t p = 1000000007) {
  skewcert::PrimeField F(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coord(0, p - 1);
  const std::size_t words = std::size_t(1) << (j + 1);
  const std::size_t npts = words + 4;
  std::vector<std::vector<std::uint64_t>> rows(words, std::vector<std::uint64_t>(npts));
  for (std::size_t q = 0; q < npts;) {
    std::vector<std::uint64_t> pt(s.nvars());
    for (auto& c : pt) c = coord(rng);
    std::vector<std::uint64_t> va, vb;
    try {
      for (unsigned k = 0;; ++k) {
        if (k % n == 0) {
          va.push_back(detail::eval_mod(F, a, pt));
          vb.push_back(detail::eval_mod(F, b, pt));
          if (va.size() == j + 1) break;
        }
        std::vector<std::uint64_t> next;
        for (const auto& g : s.images()) next.push_back(detail::eval_mod(F, g, pt));
        pt = std::move(next);
      }
    } catch (const skewcert::BadPrime&) {
      continue;
    }
    for (std::size_t w = 0; w < words; ++w) {
      std::uint64_t v = 1;
      for (unsigned i = 0; i <= j; ++i) v = F.mul(v, detail::bit(w, j, i) ? vb[i] : va[i]);
      rows[w][q] = v;
    }
    ++q;
  }
  return skewcert::mod_rank(F, rows);
}

// Degrees of sigma^1..sigma^N read off a random line mod p: the forms are
// evaluated on the restricted triple and the common factor is stripped each
// round. Generic lines avoid the finitely many base points.
inline std::vector<int> line_degrees_mod(const std::array<skewcert::MultiPoly, 3>& forms, unsigned N,
                                         std::uint64_t seed, std::uint64_t p = 1000000007) {
  using skewcert::ModPoly;
  namespace mp = skewcert::modpoly;
  skewcert::PrimeField F(p);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coord(1, p - 1);
  std::array<ModPoly, 3> g;
  for (auto& c : g) c = {coord(rng), coord(rng)};
  std::vector<int> out;
  for (unsigned n = 0; n < N; ++n) {
    std::array<std::vector<ModPoly>, 3> pw;
    std::array<ModPoly, 3> next;
    for (std::size_t i = 0; i < 3; ++i) {
      ModPoly acc;
      for (const auto& t : forms[i].terms()) {
        ModPoly m = {F.reduce(t.coeff)};
        for (std::size_t v = 0; v < 3; ++v) {
          auto& cache = pw[v];
          if (cache.empty()) cache.push_back({1});
          while (cache.size() <= t.exps[v]) cache.push_back(mp::mul(F, cache.back(), g[v]));
          m = mp::mul(F, m, cache[t.exps[v]]);
        }
        acc = mp::add(F, acc, m);
      }
      next[i] = acc;
    }
    ModPoly h = mp::gcd(F, mp::gcd(F, next[0], next[1]), next[2]);
    int d = 0;
    for (auto& c : next) {
      if (!c.empty()) c = mp::divrem(F, c, h).first;
      d = std::max(d, mp::degree(c));
    }
    g = next;
    out.push_back(d);
  }
  return out;
}

// d/de f(P + e v) at e = 0 from f sampled at e = 0..deg and Lagrange weights.
inline skewcert::Rational directional_derivative(const skewcert::MultiPoly& f,
                                                 const std::vector<skewcert::Rational>& P,
                                                 std::size_t var) {
  using skewcert::Rational;
  const int d = std::max(f.total_degree(), 1);
  Rational acc = 0;
  for (int k = 0; k <= d; ++k) {
    std::vector<Rational> Q = P;
    Q[var] += k;
    // L_k'(0) for nodes 0..d.
    Rational w = 0;
    for (int m = 0; m <= d; ++m) {
      if (m == k) continue;
      Rational term = Rational(1, 1) / Rational(k - m);
      for (int r = 0; r <= d; ++r)
        if (r != k && r != m) term *= Rational(-r) / Rational(k - r);
      w += term;
    }
    acc += w * f.evaluate(Q);
  }
  return acc;
}

}  // namespace testsupport
