#pragma once

// The quotient of the forest complex of the complete double graph by the
// symmetric group: cells are edge-labelled forests on unlabelled vertices.
// Two routes to its homology: the cell chain complex directly, and the
// first page of the spectral sequence of the edge-count filtration.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dforest/chain_complex.hpp"
#include "dforest/errors.hpp"
#include "dforest/forest.hpp"
#include "dforest/parallel.hpp"

namespace dforest {

struct QuotientLimits {
  int max_n = 7;
  int max_table_n = 8;
  SymmetryLimits symmetry;
  std::size_t max_cells = 2'000'000;
  unsigned threads = 1;
};

/// The E1 page cannot be used because some E_T has homology off its
/// diagonal degree.
class DiagonalHypothesisFailed : public StructuralError {
 public:
  DiagonalHypothesisFailed(const std::string& forest_code)
      : StructuralError("E_T homology is not concentrated in degree |E(T)|-1 for forest " + forest_code), code_(forest_code) {}
  const std::string& forest_code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Cells by dimension, each dimension sorted by edge count then code.
struct CellComplex {
  int n = 0;
  std::vector<std::vector<CanonicalForest>> cells;
  std::unordered_map<std::string, std::size_t> index;  ///< code -> position within its dimension

  std::size_t size() const {
    std::size_t s = 0;
    for (const auto& c : cells) s += c.size();
    return s;
  }
};

namespace detail {

inline void check_quotient_n(int n, const QuotientLimits& limits) {
  if (n < 2) throw InputError("the quotient needs n >= 2");
  if (n > limits.max_n) throw GuardExceeded("quotient computations limited to n <= " + std::to_string(limits.max_n));
}

/// Calls fn(labels) for every map {0..k-1} -> {1..m} onto {1..m}, any m.
template <class Fn>
void for_each_surjective_labelling(std::size_t k, Fn&& fn) {
  std::vector<int> labels(k, 1);
  std::vector<int> count(k + 2, 0);
  for (;;) {
    int top = 0;
    std::fill(count.begin(), count.end(), 0);
    for (int l : labels) {
      ++count[static_cast<std::size_t>(l)];
      top = std::max(top, l);
    }
    bool onto = true;
    for (int l = 1; l <= top; ++l) onto = onto && count[static_cast<std::size_t>(l)] > 0;
    if (onto) fn(labels);
    std::size_t i = 0;
    while (i < k && labels[i] == static_cast<int>(k)) labels[i++] = 1;
    if (i == k) return;
    ++labels[i];
  }
}

inline int top_label(const std::vector<int>& labels) { return *std::max_element(labels.begin(), labels.end()); }

}  // namespace detail

/// All cells of X_n: labelled forests with at least one edge, labels onto
/// 1..p+1 for a p-cell.
inline CellComplex enumerate_cells(int n, const QuotientLimits& limits = {}) {
  detail::check_quotient_n(n, limits);
  const auto forests = enumerate_forests(n, 1);
  std::vector<std::vector<CanonicalForest>> found(forests.size());
  parallel_for(forests.size(), limits.threads, [&](std::size_t i) {
    const auto& t = forests[i].layout;
    std::set<std::string> seen;
    detail::for_each_surjective_labelling(t.n_edges(), [&](const std::vector<int>& labels) {
      auto f = t;
      f.labels = labels;
      auto c = canonical_form(f);
      if (seen.insert(c.code).second) found[i].push_back(std::move(c));
    });
  });
  CellComplex out;
  out.n = n;
  out.cells.resize(static_cast<std::size_t>(n - 1));
  std::size_t total = 0;
  for (auto& fs : found) {
    total += fs.size();
    if (total > limits.max_cells) throw GuardExceeded("more than " + std::to_string(limits.max_cells) + " cells");
    for (auto& c : fs) out.cells[static_cast<std::size_t>(c.dimension())].push_back(std::move(c));
  }
  for (auto& dim : out.cells) {
    std::sort(dim.begin(), dim.end(), [](const CanonicalForest& a, const CanonicalForest& b) {
      if (a.n_edges() != b.n_edges()) return a.n_edges() < b.n_edges();
      return a.code < b.code;
    });
    for (std::size_t i = 0; i < dim.size(); ++i) out.index.emplace(dim[i].code, i);
  }
  return out;
}

struct BoundaryTerm {
  CanonicalForest face;
  std::int64_t coefficient = 0;
};

/// Boundary of a p-cell, p >= 1. Term i <= p merges labels i and i+1 with
/// sign (-1)^(p+i+1); term p+1 deletes the top-labelled edges with sign +1.
/// Terms are canonical, merged by code and sorted; zero terms are dropped.
inline std::vector<BoundaryTerm> boundary_cell(const LabelledForest& cell) {
  if (cell.labels.size() != cell.edges.size() || cell.edges.empty()) throw InputError("a cell needs one label per edge");
  const auto labels = detail::normalise_labels(cell.labels);
  const int p = detail::top_label(labels) - 1;
  if (p < 1) throw InputError("boundary_cell needs at least two label values");
  std::map<std::string, BoundaryTerm> terms;
  auto add = [&](const LabelledForest& f, std::int64_t sign) {
    auto c = canonical_form(f);
    auto [it, fresh] = terms.try_emplace(c.code);
    if (fresh) it->second.face = std::move(c);
    it->second.coefficient += sign;
  };
  for (int i = 1; i <= p; ++i) {
    LabelledForest f{cell.n_vertices, cell.edges, labels};
    for (auto& l : f.labels)
      if (l > i) --l;
    add(f, (p + i + 1) % 2 == 0 ? 1 : -1);
  }
  LabelledForest f{cell.n_vertices, {}, {}};
  for (std::size_t e = 0; e < cell.edges.size(); ++e)
    if (labels[e] <= p) {
      f.edges.push_back(cell.edges[e]);
      f.labels.push_back(labels[e]);
    }
  add(f, 1);
  std::vector<BoundaryTerm> out;
  for (auto& [code, t] : terms)
    if (t.coefficient != 0) out.push_back(std::move(t));
  return out;
}

/// Cell chain complex of X_n in degrees 0..n-2, or -1..n-2 when augmented.
inline ChainComplexZ x_chain_complex(const CellComplex& cx, bool augmented, unsigned threads = 1) {
  std::vector<std::size_t> ranks;
  std::vector<SparseMatrix> bounds;
  if (augmented) {
    ranks.push_back(1);
    SparseMatrix eps(1, cx.cells[0].size());
    for (std::size_t j = 0; j < cx.cells[0].size(); ++j) eps.set_column(j, {{0, 1}});
    bounds.push_back(std::move(eps));
  }
  for (const auto& dim : cx.cells) ranks.push_back(dim.size());
  for (std::size_t p = 1; p < cx.cells.size(); ++p) {
    SparseMatrix d(cx.cells[p - 1].size(), cx.cells[p].size());
    std::vector<SparseMatrix::Column> cols(cx.cells[p].size());
    parallel_for(cols.size(), threads, [&](std::size_t j) {
      for (const auto& t : boundary_cell(cx.cells[p][j].layout)) {
        auto it = cx.index.find(t.face.code);
        if (it == cx.index.end()) throw StructuralError("boundary face missing from the cell list: " + t.face.code);
        cols[j].push_back({static_cast<int>(it->second), t.coefficient});
      }
    });
    for (std::size_t j = 0; j < cols.size(); ++j) d.set_column(j, std::move(cols[j]));
    bounds.push_back(std::move(d));
  }
  return ChainComplexZ(augmented ? -1 : 0, std::move(ranks), std::move(bounds));
}

/// Reduced integral homology of X_n from its cells.
inline Homology x_homology(int n, const QuotientLimits& limits = {}) {
  return homology(x_chain_complex(enumerate_cells(n, limits), true, limits.threads));
}

/// The complex E_T: in degree p, orbits of labellings E(T) -> {1..p+1}
/// (onto) under the symmetry group, with the label-merging part of the
/// cell boundary. Degrees 0..k-1.
inline ChainComplexZ e_t_complex(const LabelledForest& t, const SymmetryLimits& limits = {}) {
  const auto k = t.n_edges();
  if (k == 0) throw InputError("E_T needs a forest with at least one edge");
  const auto group = forest_symmetry_group(t, limits);
  auto orbit_rep = [&](const std::vector<int>& f) {
    std::vector<int> best = f, h(k);
    for (const auto& g : group.elements) {
      for (std::size_t e = 0; e < k; ++e) h[static_cast<std::size_t>(g[e])] = f[e];
      if (h < best) best = h;
    }
    return best;
  };
  std::vector<std::set<std::vector<int>>> reps(k);
  detail::for_each_surjective_labelling(k, [&](const std::vector<int>& f) {
    reps[static_cast<std::size_t>(detail::top_label(f) - 1)].insert(orbit_rep(f));
  });
  std::vector<std::map<std::vector<int>, int>> index(k);
  std::vector<std::size_t> ranks;
  for (std::size_t p = 0; p < k; ++p) {
    int i = 0;
    for (const auto& r : reps[p]) index[p][r] = i++;
    ranks.push_back(reps[p].size());
  }
  std::vector<SparseMatrix> bounds;
  for (std::size_t p = 1; p < k; ++p) {
    SparseMatrix d(ranks[p - 1], ranks[p]);
    std::size_t j = 0;
    for (const auto& f : reps[p]) {
      SparseMatrix::Column col;
      for (int i = 1; i <= static_cast<int>(p); ++i) {
        auto merged = f;
        for (auto& l : merged)
          if (l > i) --l;
        col.push_back({index[p - 1].at(orbit_rep(merged)), (static_cast<int>(p) + i + 1) % 2 == 0 ? 1 : -1});
      }
      d.set_column(j++, std::move(col));
    }
    bounds.push_back(std::move(d));
  }
  return ChainComplexZ(0, std::move(ranks), std::move(bounds));
}

inline Homology e_t_homology(const LabelledForest& t, const SymmetryLimits& limits = {}) {
  return homology(e_t_complex(t, limits));
}

/// f[k][n] = number of admissible forests with k edges on n vertices, for
/// 1 <= n <= n_max and 1 <= k; other entries are zero.
inline std::vector<std::vector<std::int64_t>> f_table(int n_max, const QuotientLimits& limits = {}) {
  if (n_max < 1) throw InputError("f_table needs n_max >= 1");
  if (n_max > limits.max_table_n) throw GuardExceeded("f_table limited to n <= " + std::to_string(limits.max_table_n));
  std::vector<std::vector<std::int64_t>> f(static_cast<std::size_t>(n_max + 1), std::vector<std::int64_t>(static_cast<std::size_t>(n_max + 1), 0));
  for (int n = 1; n <= n_max; ++n) {
    const auto forests = enumerate_forests(n, 1);
    std::vector<char> ok(forests.size());
    parallel_for(forests.size(), limits.threads, [&](std::size_t i) { ok[i] = is_admissible(forests[i].layout, limits.symmetry); });
    for (std::size_t i = 0; i < forests.size(); ++i)
      if (ok[i]) ++f[forests[i].n_edges()][static_cast<std::size_t>(n)];
  }
  return f;
}

/// First page on the (k-1, k) diagonal: basis[k] are the admissible forests
/// with k edges (edge order = canonical layout order), d1[k] maps the
/// span of basis[k] to that of basis[k-1] (d1[0], d1[1] are empty).
struct E1Page {
  int n = 0;
  std::vector<std::vector<CanonicalForest>> basis;
  std::vector<SparseMatrix> d1;
};

/// d1(e_T) = sum over edge orbits alpha with T - alpha admissible of
/// sgn(psi~ psi_T^-1) [S(T - alpha) : S~(T)] e_(T - alpha).
inline E1Page d1_page(int n, const QuotientLimits& limits = {}) {
  detail::check_quotient_n(n, limits);
  E1Page page;
  page.n = n;
  page.basis.resize(static_cast<std::size_t>(n));
  std::vector<std::vector<std::size_t>> group_order(static_cast<std::size_t>(n));
  std::vector<std::unordered_map<std::string, int>> index(static_cast<std::size_t>(n));
  {
    const auto forests = enumerate_forests(n, 1);
    std::vector<EdgeSymmetryGroup> groups(forests.size());
    parallel_for(forests.size(), limits.threads, [&](std::size_t i) { groups[i] = forest_symmetry_group(forests[i].layout, limits.symmetry); });
    for (std::size_t i = 0; i < forests.size(); ++i) {
      bool even = true;
      for (const auto& g : groups[i].elements) even = even && permutation_sign(g) > 0;
      if (!even) continue;
      const auto k = forests[i].n_edges();
      index[k][forests[i].code] = static_cast<int>(page.basis[k].size());
      page.basis[k].push_back(forests[i]);
      group_order[k].push_back(groups[i].order());
    }
  }
  page.d1.resize(static_cast<std::size_t>(n));
  page.d1[0] = SparseMatrix(0, 0);
  page.d1[1] = SparseMatrix(0, page.basis[1].size());
  for (std::size_t k = 2; k < static_cast<std::size_t>(n); ++k) {
    SparseMatrix d(page.basis[k - 1].size(), page.basis[k].size());
    std::vector<SparseMatrix::Column> cols(page.basis[k].size());
    parallel_for(cols.size(), limits.threads, [&](std::size_t j) {
      const auto& t = page.basis[k][j].layout;
      const auto group = forest_symmetry_group(t, limits.symmetry);
      for (std::size_t alpha = 0; alpha < k; ++alpha) {
        bool rep = true;
        std::size_t stab = 0;
        for (const auto& g : group.elements) {
          rep = rep && static_cast<std::size_t>(g[alpha]) >= alpha;
          if (static_cast<std::size_t>(g[alpha]) == alpha) ++stab;
        }
        if (!rep) continue;
        LabelledForest u{t.n_vertices, {}, {}};
        for (std::size_t e = 0; e < k; ++e)
          if (e != alpha) u.edges.push_back(t.edges[e]);
        const auto cu = canonical_form(u);
        auto it = index[k - 1].find(cu.code);
        if (it == index[k - 1].end()) continue;
        const auto order_u = group_order[k - 1][static_cast<std::size_t>(it->second)];
        if (order_u % stab != 0) throw StructuralError("edge stabiliser order does not divide |S(T - alpha)|");
        std::vector<int> pi(k);
        for (std::size_t e = 0; e < k; ++e) {
          if (e == alpha) {
            pi[e] = static_cast<int>(k - 1);
            continue;
          }
          const int head = cu.vertex_map[static_cast<std::size_t>(t.edges[e].target)];
          const auto& ue = cu.layout.edges;
          pi[e] = static_cast<int>(std::find_if(ue.begin(), ue.end(), [&](const Edge& x) { return x.target == head; }) - ue.begin());
        }
        cols[j].push_back({it->second, permutation_sign(pi) * static_cast<std::int64_t>(order_u / stab)});
      }
    });
    for (std::size_t j = 0; j < cols.size(); ++j) d.set_column(j, std::move(cols[j]));
    page.d1[k] = std::move(d);
  }
  return page;
}

/// The page as a single complex in degrees -1..n-2 (degree k-1 spanned by
/// basis[k], augmented by the single-edge forest).
inline ChainComplexZ e1_chain_complex(const E1Page& page) {
  std::vector<std::size_t> ranks{1};
  std::vector<SparseMatrix> bounds;
  SparseMatrix eps(1, page.basis[1].size());
  for (std::size_t j = 0; j < page.basis[1].size(); ++j) eps.set_column(j, {{0, 1}});
  bounds.push_back(std::move(eps));
  for (std::size_t k = 1; k < page.basis.size(); ++k) ranks.push_back(page.basis[k].size());
  for (std::size_t k = 2; k < page.basis.size(); ++k) bounds.push_back(page.d1[k]);
  return ChainComplexZ(-1, std::move(ranks), std::move(bounds));
}

/// The first forest (in enumeration order) whose E_T has integral homology
/// other than Z in degree k-1 (admissible) or zero (inadmissible).
inline std::optional<CanonicalForest> diagonal_hypothesis_violation(int n, const QuotientLimits& limits = {}) {
  detail::check_quotient_n(n, limits);
  const auto forests = enumerate_forests(n, 1);
  std::vector<char> bad(forests.size(), 0);
  parallel_for(forests.size(), limits.threads, [&](std::size_t i) {
    const auto& t = forests[i].layout;
    const int k = static_cast<int>(t.n_edges());
    const auto h = e_t_homology(t, limits.symmetry);
    const bool admissible = is_admissible(t, limits.symmetry);
    for (int p = 0; p < k; ++p) {
      const HomologyGroup expected{(admissible && p == k - 1) ? 1 : 0, {}};
      if (!(h.at(p) == expected)) bad[i] = 1;
    }
  });
  for (std::size_t i = 0; i < forests.size(); ++i)
    if (bad[i]) return forests[i];
  return std::nullopt;
}

/// Reduced integral homology of X_n from the first page; throws
/// DiagonalHypothesisFailed when the page is not concentrated on the diagonal.
inline Homology e1_homology(int n, const QuotientLimits& limits = {}) {
  if (auto bad = diagonal_hypothesis_violation(n, limits)) throw DiagonalHypothesisFailed(bad->code);
  return homology(e1_chain_complex(d1_page(n, limits)));
}

/// Both sides of E1_{p,k} = sum over forests T with k edges of H_p(E_T):
/// `filtered` is H_p(F_k, F_(k-1)) of the cell complex filtered by edge
/// count, `summed` the direct sum.
class E1EntryOracle {
 public:
  explicit E1EntryOracle(int n, const QuotientLimits& limits = {}) : limits_(limits) {
    detail::check_quotient_n(n, limits);
    cells_ = enumerate_cells(n, limits);
    complex_ = x_chain_complex(cells_, false, limits.threads);
    forests_ = enumerate_forests(n, 1);
  }

  std::pair<HomologyGroup, HomologyGroup> entry(int p, int k) {
    return {filtered(k).at(p), summed(k).at(p)};
  }

  const Homology& filtered(int k) {
    auto it = filtered_.find(k);
    if (it != filtered_.end()) return it->second;
    std::vector<std::vector<bool>> keep(cells_.cells.size());
    for (std::size_t p = 0; p < cells_.cells.size(); ++p)
      for (const auto& c : cells_.cells[p]) keep[p].push_back(static_cast<int>(c.n_edges()) <= k);
    const auto fk = complex_.subcomplex(keep);
    std::vector<std::vector<bool>> lower(cells_.cells.size());
    for (std::size_t p = 0; p < cells_.cells.size(); ++p)
      for (const auto& c : cells_.cells[p])
        if (static_cast<int>(c.n_edges()) <= k) lower[p].push_back(static_cast<int>(c.n_edges()) < k);
    return filtered_[k] = relative_homology(fk, lower);
  }

  const Homology& summed(int k) {
    auto it = summed_.find(k);
    if (it != summed_.end()) return it->second;
    std::vector<HomologyGroup> groups(static_cast<std::size_t>(std::max(k, 1)));
    for (const auto& t : forests_) {
      if (static_cast<int>(t.n_edges()) != k) continue;
      const auto h = e_t_homology(t.layout, limits_.symmetry);
      for (int p = 0; p < k; ++p) groups[static_cast<std::size_t>(p)] = direct_sum(groups[static_cast<std::size_t>(p)], h.at(p));
    }
    return summed_[k] = Homology(0, std::move(groups));
  }

 private:
  QuotientLimits limits_;
  CellComplex cells_;
  ChainComplexZ complex_;
  std::vector<CanonicalForest> forests_;
  std::map<int, Homology> filtered_, summed_;
};

inline std::pair<HomologyGroup, HomologyGroup> e1_entry_oracle(int n, int p, int k, const QuotientLimits& limits = {}) {
  return E1EntryOracle(n, limits).entry(p, k);
}

/// One line "dim | code" per cell.
inline std::string dump_cells(const CellComplex& cx) {
  std::ostringstream out;
  for (std::size_t p = 0; p < cx.cells.size(); ++p)
    for (const auto& c : cx.cells[p]) out << p << " | " << c.code << "\n";
  return out.str();
}

/// Nonzero d1 entries as "k | row code | column code | value".
inline std::string dump_e1_page(const E1Page& page) {
  std::ostringstream out;
  for (std::size_t k = 2; k < page.d1.size(); ++k)
    for (std::size_t j = 0; j < page.d1[k].cols(); ++j)
      for (const auto& e : page.d1[k].column(j))
        out << k << " | " << page.basis[k - 1][static_cast<std::size_t>(e.row)].code << " | " << page.basis[k][j].code << " | " << e.value << "\n";
  return out.str();
}

/// Two directed paths with three edges each: an 8-vertex forest whose only
/// symmetry swaps the paths.
inline LabelledForest two_path_forest() { return LabelledForest{8, {{0, 1}, {1, 2}, {2, 3}, {4, 5}, {5, 6}, {6, 7}}, {}}; }

}  // namespace dforest
