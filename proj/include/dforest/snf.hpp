#pragma once

// Smith normal form over the integers.
//
// smith_normal_form() is the dense algorithm with unimodular transforms,
// used directly for small matrices and as the tail of invariant_factors().
// invariant_factors() first eliminates unit pivots on the sparse matrix
// (boundary operators are overwhelmingly +-1) in checked 64-bit
// arithmetic and retries in BigInt on overflow.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "dforest/matrix.hpp"

namespace dforest {

struct SnfResult {
  DenseMatrix<BigInt> U;  ///< rows x rows, unimodular
  DenseMatrix<BigInt> V;  ///< cols x cols, unimodular
  DenseMatrix<BigInt> D;  ///< U * A * V, diagonal with d1 | d2 | ... >= 0

  std::vector<BigInt> diagonal() const {
    std::vector<BigInt> d;
    for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
    return d;
  }
};

namespace detail {

template <class Int>
struct NoTransform {
  void swap_rows(std::size_t, std::size_t) {}
  void swap_cols(std::size_t, std::size_t) {}
  void add_row_multiple(std::size_t, std::size_t, const Int&) {}
  void add_col_multiple(std::size_t, std::size_t, const Int&) {}
  void negate_row(std::size_t) {}
};

template <class Int>
struct TrackTransform {
  DenseMatrix<Int>& U;
  DenseMatrix<Int>& V;
  void swap_rows(std::size_t a, std::size_t b) { U.swap_rows(a, b); }
  void swap_cols(std::size_t a, std::size_t b) { V.swap_cols(a, b); }
  void add_row_multiple(std::size_t t, std::size_t s, const Int& f) { U.add_row_multiple(t, s, f); }
  void add_col_multiple(std::size_t t, std::size_t s, const Int& f) { V.add_col_multiple(t, s, f); }
  void negate_row(std::size_t i) { U.negate_row(i); }
};

/// In-place diagonalisation. Pivots on the smallest nonzero absolute value
/// of the trailing block, clears its row and column with Euclidean steps
/// and repairs divisibility by folding offending rows into the pivot row.
template <class Int, class Transform>
void diagonalise(DenseMatrix<Int>& a, Transform& tr) {
  const std::size_t m = a.rows(), n = a.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    bool found = false;
    for (;;) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t pi = t, pj = t;
      found = false;
      Int best{};
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (a(i, j) == 0) continue;
          Int v = arith::abs(a(i, j));
          if (!found || v < best) {
            best = v;
            pi = i;
            pj = j;
            found = true;
            if (best == 1) goto located;
          }
        }
    located:
      if (!found) return;
      a.swap_rows(t, pi);
      tr.swap_rows(t, pi);
      a.swap_cols(t, pj);
      tr.swap_cols(t, pj);

      bool dirty = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a(i, t) == 0) continue;
        Int q = a(i, t) / a(t, t);
        a.add_row_multiple(i, t, arith::neg(q));
        tr.add_row_multiple(i, t, arith::neg(q));
        if (a(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a(t, j) == 0) continue;
        Int q = a(t, j) / a(t, t);
        a.add_col_multiple(j, t, arith::neg(q));
        tr.add_col_multiple(j, t, arith::neg(q));
        if (a(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // Row and column are clear; every trailing entry must be a multiple.
      std::optional<std::size_t> bad_row;
      for (std::size_t i = t + 1; i < m && !bad_row; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            bad_row = i;
            break;
          }
      if (!bad_row) break;
      a.add_row_multiple(t, *bad_row, Int(1));
      tr.add_row_multiple(t, *bad_row, Int(1));
    }
    if (a(t, t) < 0) {
      a.negate_row(t);
      tr.negate_row(t);
    }
  }
}

}  // namespace detail

/// Full Smith normal form with transforms: U * A * V = D.
inline SnfResult smith_normal_form(const DenseMatrix<BigInt>& a) {
  SnfResult r{DenseMatrix<BigInt>::identity(a.rows()), DenseMatrix<BigInt>::identity(a.cols()), a};
  detail::TrackTransform<BigInt> tr{r.U, r.V};
  detail::diagonalise(r.D, tr);
  return r;
}

inline SnfResult smith_normal_form(const SparseMatrix& a) { return smith_normal_form(DenseMatrix<BigInt>::from_sparse(a)); }

/// Rank and the nontrivial invariant factors (entries > 1 of the SNF
/// diagonal, in divisibility order).
struct InvariantFactors {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
};

namespace detail {

template <class Int>
InvariantFactors dense_invariant_factors(DenseMatrix<Int> a) {
  NoTransform<Int> tr;
  diagonalise(a, tr);
  InvariantFactors out;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    if (a(i, i) == 0) break;
    ++out.rank;
    if (a(i, i) != 1) out.torsion.push_back(BigInt(a(i, i)));
  }
  return out;
}

template <class Int>
struct SparseRow {
  std::vector<std::pair<int, Int>> entries;  // sorted by column

  const Int* find(int col) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), col,
                               [](const std::pair<int, Int>& e, int c) { return e.first < c; });
    return (it != entries.end() && it->first == col) ? &it->second : nullptr;
  }
};

/// row := row - factor * pivot; appends columns that became nonzero to fill.
template <class Int>
void axpy_row(SparseRow<Int>& row, const SparseRow<Int>& pivot, const Int& factor, std::vector<int>& fill) {
  std::vector<std::pair<int, Int>> out;
  out.reserve(row.entries.size() + pivot.entries.size());
  auto a = row.entries.begin(), ae = row.entries.end();
  auto b = pivot.entries.begin(), be = pivot.entries.end();
  while (a != ae || b != be) {
    if (b == be || (a != ae && a->first < b->first)) {
      out.push_back(std::move(*a++));
    } else if (a == ae || b->first < a->first) {
      out.emplace_back(b->first, arith::neg(arith::mul(factor, b->second)));
      fill.push_back(b->first);
      ++b;
    } else {
      Int v = arith::sub(a->second, arith::mul(factor, b->second));
      if (v != 0) out.emplace_back(a->first, std::move(v));
      ++a;
      ++b;
    }
  }
  row.entries = std::move(out);
}

template <class Int>
InvariantFactors sparse_invariant_factors(const SparseMatrix& m) {
  const std::size_t n_rows = m.rows(), n_cols = m.cols();
  std::vector<SparseRow<Int>> rows(n_rows);
  std::vector<std::vector<int>> col_rows(n_cols);
  for (std::size_t j = 0; j < n_cols; ++j)
    for (const auto& e : m.column(j)) {
      rows[static_cast<std::size_t>(e.row)].entries.emplace_back(static_cast<int>(j), Int(e.value));
      col_rows[j].push_back(e.row);
    }
  std::vector<char> row_alive(n_rows, 1), col_done(n_cols, 0);

  std::vector<int> order(n_cols);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return col_rows[static_cast<std::size_t>(a)].size() < col_rows[static_cast<std::size_t>(b)].size();
  });

  InvariantFactors out;
  std::vector<int> fill;
  bool progress = true;
  while (progress) {
    progress = false;
    for (int c : order) {
      const auto cu = static_cast<std::size_t>(c);
      if (col_done[cu]) continue;
      // Live rows that still hold column c.
      std::vector<int> holders;
      for (int r : col_rows[cu])
        if (row_alive[static_cast<std::size_t>(r)] && rows[static_cast<std::size_t>(r)].find(c)) holders.push_back(r);
      std::sort(holders.begin(), holders.end());
      holders.erase(std::unique(holders.begin(), holders.end()), holders.end());
      col_rows[cu] = holders;
      if (holders.empty()) {
        col_done[cu] = 1;
        continue;
      }
      int pivot = -1;
      for (int r : holders) {
        const Int& v = *rows[static_cast<std::size_t>(r)].find(c);
        if ((v == 1 || v == -1) &&
            (pivot < 0 || rows[static_cast<std::size_t>(r)].entries.size() < rows[static_cast<std::size_t>(pivot)].entries.size()))
          pivot = r;
      }
      if (pivot < 0) continue;
      const auto& prow = rows[static_cast<std::size_t>(pivot)];
      const Int pval = *prow.find(c);
      for (int r : holders) {
        if (r == pivot) continue;
        auto& row = rows[static_cast<std::size_t>(r)];
        Int factor = arith::mul(*row.find(c), pval);  // pval is +-1, so this divides exactly
        fill.clear();
        axpy_row(row, prow, factor, fill);
        for (int f : fill) col_rows[static_cast<std::size_t>(f)].push_back(r);
      }
      row_alive[static_cast<std::size_t>(pivot)] = 0;
      col_done[cu] = 1;
      ++out.rank;
      progress = true;
    }
  }

  // Whatever survives has no unit entries; finish densely.
  std::vector<int> live_rows, live_cols;
  std::vector<int> col_index(n_cols, -1);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (!row_alive[r]) continue;
    bool any = false;
    for (const auto& [c, v] : rows[r].entries)
      if (!col_done[static_cast<std::size_t>(c)]) {
        any = true;
        if (col_index[static_cast<std::size_t>(c)] < 0) {
          col_index[static_cast<std::size_t>(c)] = static_cast<int>(live_cols.size());
          live_cols.push_back(c);
        }
      }
    if (any) live_rows.push_back(static_cast<int>(r));
  }
  if (!live_rows.empty()) {
    DenseMatrix<BigInt> rest(live_rows.size(), live_cols.size());
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : rows[static_cast<std::size_t>(live_rows[i])].entries)
        if (!col_done[static_cast<std::size_t>(c)]) rest(i, static_cast<std::size_t>(col_index[static_cast<std::size_t>(c)])) = BigInt(v);
    auto tail = dense_invariant_factors(std::move(rest));
    out.rank += tail.rank;
    out.torsion = std::move(tail.torsion);
  }
  return out;
}

}  // namespace detail

/// Rank and torsion coefficients of an integer matrix.
inline InvariantFactors invariant_factors(const SparseMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};
  try {
    return detail::sparse_invariant_factors<std::int64_t>(m);
  } catch (const IntegerOverflow&) {
    return detail::sparse_invariant_factors<BigInt>(m);
  }
}

}  // namespace dforest
