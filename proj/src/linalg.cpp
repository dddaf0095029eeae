#include "skewcert/linalg.hpp"

#include <algorithm>

namespace skewcert {

namespace {

using Sparse = std::vector<std::pair<std::uint32_t, Integer>>;

// fa*A - fb*B, both sorted by column.
Sparse combine(const Integer& fa, const Sparse& A, const Integer& fb, const Sparse& B) {
  Sparse r;
  r.reserve(A.size() + B.size());
  auto a = A.begin(), b = B.begin();
  while (a != A.end() || b != B.end()) {
    if (b == B.end() || (a != A.end() && a->first < b->first)) {
      r.emplace_back(a->first, fa * a->second);
      ++a;
    } else if (a == A.end() || b->first < a->first) {
      r.emplace_back(b->first, -(fb * b->second));
      ++b;
    } else {
      Integer v = fa * a->second - fb * b->second;
      if (v != 0) r.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  return r;
}

void divide_content(Sparse& row, Sparse& transform) {
  Integer g = 0;
  for (const auto& [c, v] : row) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  for (const auto& [c, v] : transform) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  if (g <= 1) return;
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  for (auto& [c, v] : transform) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

}  // namespace

std::optional<std::vector<Integer>> SparseEchelon::insert(Row row) {
  const std::size_t idx = inserted_++;
  Sparse t{{std::uint32_t(idx), Integer(1)}};
  std::size_t pos = 0;
  while (pos < row.size()) {
    std::uint32_t col = row[pos].first;
    auto it = pivot_of_.find(col);
    if (it == pivot_of_.end()) {
      ++pos;
      continue;
    }
    const Entry& b = basis_[it->second];
    Integer g = gcd(b.row.front().second, row[pos].second);
    Integer fr = b.row.front().second / g, fb = row[pos].second / g;
    row = combine(fr, row, fb, b.row);
    t = combine(fr, t, fb, b.transform);
    divide_content(row, t);
    pos = std::size_t(std::upper_bound(row.begin(), row.end(), col,
                                       [](std::uint32_t c, const auto& e) { return c < e.first; }) -
                      row.begin());
  }
  if (row.empty()) {
    std::vector<Integer> dense(inserted_, 0);
    for (const auto& [i, v] : t) dense[i] = v;
    return dense;
  }
  pivot_of_.emplace(row.front().first, basis_.size());
  basis_.push_back({std::move(row), std::move(t)});
  return std::nullopt;
}

std::size_t MonomialColumns::Hash::operator()(const Exponents& e) const {
  std::size_t h = e.size();
  for (auto x : e) h = h * 1000003u ^ x;
  return h;
}

SparseEchelon::Row MonomialColumns::row(const MultiPoly& p) {
  SparseEchelon::Row r;
  if (p.is_zero()) return r;
  Rational c = p.content();
  r.reserve(p.term_count());
  for (const auto& t : p.terms()) {
    auto [it, fresh] = ids_.try_emplace(t.exps, std::uint32_t(ids_.size()));
    Rational v = t.coeff / c;
    r.emplace_back(it->second, v.get_num());
  }
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return r;
}

std::size_t bareiss_rank(const RatMatrix& m) {
  std::vector<std::vector<Integer>> a(m.rows(), std::vector<Integer>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, m(i, j).get_den());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * Rational(l);
      a[i][j] = v.get_num();
    }
  }
  std::size_t r = 0;
  Integer prev = 1;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[r], a[p]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        Integer v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

Rational determinant(const RatMatrix& m) {
  if (!m.is_square()) throw Error("determinant of a non-square matrix");
  RatMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(p, k));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(i, k) -= f * a(c, k);
    }
  }
  return det;
}

}  // namespace skewcert
