#pragma once

// Integer scalars and the two matrix layouts used by the homology engine:
// compressed sparse columns for boundary operators and a dense row-major
// matrix for small blocks and Smith normal form with transforms.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dforest/errors.hpp"

namespace dforest {

using BigInt = boost::multiprecision::cpp_int;

/// Thrown by checked 64-bit arithmetic; callers retry with BigInt.
struct IntegerOverflow : std::overflow_error {
  IntegerOverflow() : std::overflow_error("64-bit integer overflow") {}
};

namespace arith {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw IntegerOverflow();
  return r;
}
inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw IntegerOverflow();
  return r;
}
inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw IntegerOverflow();
  return r;
}
inline std::int64_t neg(std::int64_t a) {
  if (a == std::numeric_limits<std::int64_t>::min()) throw IntegerOverflow();
  return -a;
}
inline std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }

inline BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
inline BigInt sub(const BigInt& a, const BigInt& b) { return a - b; }
inline BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
inline BigInt neg(const BigInt& a) { return -a; }
inline BigInt abs(const BigInt& a) { return a < 0 ? BigInt(-a) : a; }

}  // namespace arith

/// Sparse integer matrix stored column by column; each column is a list of
/// (row, value) pairs sorted by row with no explicit zeros.
class SparseMatrix {
 public:
  struct Entry {
    int row;
    std::int64_t value;
  };
  using Column = std::vector<Entry>;

  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), columns_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  const Column& column(std::size_t j) const { return columns_[j]; }

  /// Replaces column j; entries are sorted, merged and stripped of zeros.
  void set_column(std::size_t j, Column entries) {
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
    Column merged;
    for (const auto& e : entries) {
      if (e.row < 0 || static_cast<std::size_t>(e.row) >= rows_) throw std::out_of_range("sparse matrix row");
      if (!merged.empty() && merged.back().row == e.row)
        merged.back().value = arith::add(merged.back().value, e.value);
      else
        merged.push_back(e);
    }
    std::erase_if(merged, [](const Entry& e) { return e.value == 0; });
    columns_[j] = std::move(merged);
  }

  std::int64_t at(std::size_t i, std::size_t j) const {
    for (const auto& e : columns_[j])
      if (static_cast<std::size_t>(e.row) == i) return e.value;
    return 0;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : columns_) n += c.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  /// Keeps the listed rows and columns, renumbered in the given order.
  SparseMatrix submatrix(const std::vector<int>& keep_rows, const std::vector<int>& keep_cols) const {
    std::vector<int> row_map(rows_, -1);
    for (std::size_t i = 0; i < keep_rows.size(); ++i) row_map[static_cast<std::size_t>(keep_rows[i])] = static_cast<int>(i);
    SparseMatrix out(keep_rows.size(), keep_cols.size());
    for (std::size_t j = 0; j < keep_cols.size(); ++j) {
      Column c;
      for (const auto& e : columns_[static_cast<std::size_t>(keep_cols[j])])
        if (row_map[static_cast<std::size_t>(e.row)] >= 0) c.push_back({row_map[static_cast<std::size_t>(e.row)], e.value});
      out.columns_[j] = std::move(c);
    }
    return out;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols() != b.cols()) return false;
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const auto& x = a.columns_[j];
      const auto& y = b.columns_[j];
      if (x.size() != y.size()) return false;
      for (std::size_t k = 0; k < x.size(); ++k)
        if (x[k].row != y[k].row || x[k].value != y[k].value) return false;
    }
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::vector<Column> columns_;
};

/// True iff a * b is the zero matrix (a: r x m, b: m x c).
inline bool product_is_zero(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw StructuralError("product_is_zero: shape mismatch");
  std::vector<BigInt> acc(a.rows());
  std::vector<int> touched;
  for (std::size_t j = 0; j < b.cols(); ++j) {
    touched.clear();
    for (const auto& eb : b.column(j))
      for (const auto& ea : a.column(static_cast<std::size_t>(eb.row))) {
        acc[static_cast<std::size_t>(ea.row)] += BigInt(ea.value) * eb.value;
        touched.push_back(ea.row);
      }
    bool zero = true;
    for (int r : touched) {
      if (acc[static_cast<std::size_t>(r)] != 0) zero = false;
      acc[static_cast<std::size_t>(r)] = 0;
    }
    if (!zero) return false;
  }
  return true;
}

template <class Int>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  DenseMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (long long v : row) data_.push_back(Int(v));
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Int(1);
    return m;
  }

  static DenseMatrix from_sparse(const SparseMatrix& s) {
    DenseMatrix m(s.rows(), s.cols());
    for (std::size_t j = 0; j < s.cols(); ++j)
      for (const auto& e : s.column(j)) m(static_cast<std::size_t>(e.row), j) = Int(e.value);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[target] += factor * row[source]
  void add_row_multiple(std::size_t target, std::size_t source, const Int& factor) {
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(source, j) != 0) (*this)(target, j) = arith::add((*this)(target, j), arith::mul(factor, (*this)(source, j)));
  }
  /// col[target] += factor * col[source]
  void add_col_multiple(std::size_t target, std::size_t source, const Int& factor) {
    for (std::size_t i = 0; i < rows_; ++i)
      if ((*this)(i, source) != 0) (*this)(i, target) = arith::add((*this)(i, target), arith::mul(factor, (*this)(i, source)));
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = arith::neg((*this)(i, j));
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

/// Exact determinant by fraction-free (Bareiss) elimination.
inline BigInt determinant(DenseMatrix<BigInt> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

}  // namespace dforest
