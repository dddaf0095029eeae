#pragma once

#include "skewcert/error.hpp"
#include "skewcert/multipoly.hpp"
#include "skewcert/rational.hpp"

#include <optional>
#include <unordered_map>
#include <vector>

namespace skewcert {

/// Dense matrix over a field-like T (Rational, QuadExt with a fixed d, ...).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw Error("ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
  }
  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw Error("matrix shape mismatch");
    Matrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) = r(i, j) + a * o(k, j);
      }
    return r;
  }
  Matrix operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix shape mismatch");
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] + o.data_[i];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    Matrix r(*this);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = r.data_[i] - o.data_[i];
    return r;
  }
  Matrix scaled(const T& c) const {
    Matrix r(*this);
    for (auto& x : r.data_) x = x * c;
    return r;
  }
  std::vector<T> apply(const std::vector<T>& v) const {
    if (v.size() != cols_) throw Error("vector length mismatch");
    std::vector<T> r(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] = r[i] + (*this)(i, j) * v[j];
    return r;
  }
  Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }
  Matrix pow(unsigned e) const {
    Matrix r = identity(rows_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool is_square() const { return rows_ == cols_; }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  template <class U, class F>
  Matrix<U> map(F f) const {
    Matrix<U> r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = f((*this)(i, j));
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

/// Reduced row echelon form over a field; returns pivot columns.
template <class T>
std::vector<std::size_t> row_reduce(Matrix<T>& m) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == T(0)) ++p;
    if (p == m.rows()) continue;
    for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m(r, k), m(p, k));
    T inv = T(1) / m(r, c);
    for (std::size_t k = 0; k < m.cols(); ++k) m(r, k) = m(r, k) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == T(0)) continue;
      T f = m(i, c);
      for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = m(i, k) - f * m(r, k);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class T>
std::size_t rank(Matrix<T> m) {
  return row_reduce(m).size();
}

/// Basis of {v : m v = 0}.
template <class T>
std::vector<std::vector<T>> nullspace(Matrix<T> m) {
  auto pivots = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<T>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<T> v(m.cols(), T(0));
    v[free] = T(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = T(0) - m(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

using RatMatrix = Matrix<Rational>;

/// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
std::size_t bareiss_rank(const RatMatrix& m);
Rational determinant(const RatMatrix& m);

/// Incremental fraction-free echelon form over Z for sparse rows, tracking how
/// each reduced row combines the inserted rows. Columns are opaque ids.
class SparseEchelon {
 public:
  using Row = std::vector<std::pair<std::uint32_t, Integer>>;  // sorted by column

  /// Inserts a row; returns nullopt if it is independent of the rows so far,
  /// otherwise integer coefficients c (one per inserted row, this one included,
  /// with c.back() != 0) such that sum c_i row_i = 0.
  std::optional<std::vector<Integer>> insert(Row row);
  std::size_t rank() const { return basis_.size(); }
  std::size_t inserted() const { return inserted_; }

 private:
  struct Entry {
    Row row;
    std::vector<std::pair<std::uint32_t, Integer>> transform;  // sparse over inserted rows
  };
  std::vector<Entry> basis_;
  std::unordered_map<std::uint32_t, std::size_t> pivot_of_;
  std::size_t inserted_ = 0;
};

/// Assigns column ids to monomials and turns polynomials into integer rows
/// (each row scaled to its primitive integer form).
class MonomialColumns {
 public:
  SparseEchelon::Row row(const MultiPoly& p);
  std::size_t size() const { return ids_.size(); }

 private:
  struct Hash {
    std::size_t operator()(const Exponents& e) const;
  };
  std::unordered_map<Exponents, std::uint32_t, Hash> ids_;
};

}  // namespace skewcert
