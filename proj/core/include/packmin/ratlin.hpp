#pragma once

// Exact rational and integer linear algebra over GMP.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "packmin/errors.hpp"

namespace packmin {

using Int = mpz_class;
using Rat = mpq_class;  // always canonical: lowest terms, positive denominator

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

Rat make_rat(long num, long den = 1);
Rat make_rat(const Int& num, const Int& den);

// Accepts "p", "-p", "p/q". Throws Error{ParseError} otherwise.
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& q);
std::string to_string(const Int& z);

Int floor(const Rat& q);
Int ceil(const Rat& q);
Rat abs(const Rat& q);

// Largest m >= 0 with m*m <= q (q >= 0).
Int isqrt_floor(const Rat& q);

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows * cols)
      throw Error(ErrorCode::DimensionMismatch, "ratlin", "matrix data size mismatch");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  // Builds a matrix whose columns are the given vectors (all of length rows).
  static Matrix from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const;
  std::vector<T> col(std::size_t j) const;
  void set_col(std::size_t j, const std::vector<T>& v);
  std::vector<std::vector<T>> columns() const;

  Matrix transpose() const;
  // Columns [first, first+count).
  Matrix col_range(std::size_t first, std::size_t count) const;

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using RatMatrix = Matrix<Rat>;
using IntMatrix = Matrix<Int>;

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ratlin", "ragged matrix literal");
    for (const auto& x : r) data_.push_back(x);
  }
}

template <class T>
Matrix<T> Matrix<T>::from_columns(const std::vector<std::vector<T>>& columns, std::size_t rows) {
  Matrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) m.set_col(j, columns[j]);
  return m;
}

template <class T>
std::vector<T> Matrix<T>::row(std::size_t i) const {
  return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

template <class T>
std::vector<T> Matrix<T>::col(std::size_t j) const {
  std::vector<T> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

template <class T>
void Matrix<T>::set_col(std::size_t j, const std::vector<T>& v) {
  if (v.size() != rows_) throw Error(ErrorCode::DimensionMismatch, "ratlin", "column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

template <class T>
std::vector<std::vector<T>> Matrix<T>::columns() const {
  std::vector<std::vector<T>> out;
  out.reserve(cols_);
  for (std::size_t j = 0; j < cols_; ++j) out.push_back(col(j));
  return out;
}

template <class T>
Matrix<T> Matrix<T>::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

template <class T>
Matrix<T> Matrix<T>::col_range(std::size_t first, std::size_t count) const {
  Matrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m(i, j) = (*this)(i, first + j);
  return m;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "ratlin", "matrix product shape");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != x.size()) throw Error(ErrorCode::DimensionMismatch, "ratlin", "matrix-vector shape");
  std::vector<T> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

RatMatrix to_rat(const IntMatrix& m);
RatVec to_rat(const IntVec& v);
RatMatrix scaled(const RatMatrix& m, const Rat& s);

Rat dot(const RatVec& a, const RatVec& b);
// xᵀ G x for integer x.
Rat quadratic_form(const RatMatrix& g, const IntVec& x);
Rat quadratic_form(const RatMatrix& g, const RatVec& x);

bool is_symmetric(const RatMatrix& m);

Rat determinant(const RatMatrix& m);
Int determinant(const IntMatrix& m);
std::size_t rank(const RatMatrix& m);
std::size_t rank(const IntMatrix& m);

// Throws Error{SingularMatrix}.
RatMatrix inverse(const RatMatrix& m);
// Solves m·x = b for square nonsingular m.
RatVec solve(const RatMatrix& m, const RatVec& b);

struct HnfResult {
  IntMatrix h;  // column-style Hermite normal form, h = m·u
  IntMatrix u;  // unimodular
  std::size_t rank = 0;
};
// Column-style HNF: lower echelon, positive pivots, entries left of a pivot
// reduced into [0, pivot). Zero columns trail.
HnfResult hnf(const IntMatrix& m);

struct SnfResult {
  IntMatrix s;  // s = u·m·v, diagonal with d1 | d2 | ...
  IntMatrix u;
  IntMatrix v;
};
SnfResult snf(const IntMatrix& m);

struct LdltResult {
  RatMatrix l;  // unit lower triangular
  RatVec d;     // positive pivots
};
// Throws Error{NotPositiveDefinite} if a pivot is <= 0.
LdltResult ldlt(const RatMatrix& g);
bool is_positive_definite(const RatMatrix& g);

// G/G[pivot]: Gram of the remaining generators projected orthogonally to the
// span of the pivot generators. Remaining indices keep ascending order.
RatMatrix schur_complement(const RatMatrix& g, const std::vector<std::size_t>& pivot);

// Saturated integer basis (as columns) of {x in Z^n : m·x = 0}, HNF-canonical.
IntMatrix kernel_basis(const RatMatrix& m);

// Row i multiplied by the lcm of its denominators.
IntMatrix clear_denominators_rows(const RatMatrix& m);
// Integer vector proportional to v with coprime entries (v != 0).
IntVec primitive_direction(const RatVec& v);
Int content(const IntVec& v);

}  // namespace packmin
