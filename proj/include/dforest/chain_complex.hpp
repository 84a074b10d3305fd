#pragma once

// Graded free Z-modules with boundary matrices, and their homology.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "dforest/errors.hpp"
#include "dforest/matrix.hpp"
#include "dforest/snf.hpp"

namespace dforest {

/// One homology group Z^betti + Z/t1 + ... + Z/tr with t1 | t2 | ... .
struct HomologyGroup {
  std::int64_t betti = 0;
  std::vector<std::int64_t> torsion;

  bool is_zero() const { return betti == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }

  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

/// Human-readable form such as "Z^3 + Z/2", or "0".
inline std::string to_string(const HomologyGroup& h) {
  std::string out;
  if (h.betti == 1) out = "Z";
  else if (h.betti > 1) out = "Z^" + std::to_string(h.betti);
  for (auto t : h.torsion) out += (out.empty() ? "" : " + ") + std::string("Z/") + std::to_string(t);
  return out.empty() ? "0" : out;
}

/// A + B, with torsion brought back to invariant-factor form.
inline HomologyGroup direct_sum(const HomologyGroup& a, const HomologyGroup& b) {
  HomologyGroup out;
  out.betti = a.betti + b.betti;
  std::vector<std::int64_t> all = a.torsion;
  all.insert(all.end(), b.torsion.begin(), b.torsion.end());
  SparseMatrix diag(all.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) diag.set_column(i, {{static_cast<int>(i), all[i]}});
  for (const auto& t : invariant_factors(diag).torsion) out.torsion.push_back(static_cast<std::int64_t>(t));
  return out;
}

/// Homology in consecutive degrees starting at min_degree; degrees outside
/// the stored range are zero.
class Homology {
 public:
  Homology() = default;
  Homology(int min_degree, std::vector<HomologyGroup> groups) : min_degree_(min_degree), groups_(std::move(groups)) {}

  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return min_degree_ + static_cast<int>(groups_.size()) - 1; }
  const std::vector<HomologyGroup>& groups() const noexcept { return groups_; }

  HomologyGroup at(int degree) const {
    if (degree < min_degree_ || degree > max_degree()) return {};
    return groups_[static_cast<std::size_t>(degree - min_degree_)];
  }

  bool is_zero() const {
    for (const auto& g : groups_)
      if (!g.is_zero()) return false;
    return true;
  }

  /// Degrees with a nonzero group.
  std::vector<int> support() const {
    std::vector<int> out;
    for (int d = min_degree_; d <= max_degree(); ++d)
      if (!at(d).is_zero()) out.push_back(d);
    return out;
  }

  /// Equality as graded groups, ignoring zero padding.
  friend bool operator==(const Homology& a, const Homology& b) {
    const int lo = std::min(a.min_degree_, b.min_degree_);
    const int hi = std::max(a.max_degree(), b.max_degree());
    for (int d = lo; d <= hi; ++d)
      if (!(a.at(d) == b.at(d))) return false;
    return true;
  }

 private:
  int min_degree_ = 0;
  std::vector<HomologyGroup> groups_;
};

inline std::string to_string(const Homology& h) {
  std::string out;
  for (int d : h.support()) out += (out.empty() ? "" : ", ") + std::string("H") + std::to_string(d) + " = " + to_string(h.at(d));
  return out.empty() ? "all zero" : out;
}

/// Free chain complex C_lo <- C_lo+1 <- ... ; boundary(d) maps degree d to
/// degree d-1 and is ranks[d-1] x ranks[d]. Construction rejects complexes
/// whose consecutive boundaries do not compose to zero.
class ChainComplexZ {
 public:
  ChainComplexZ() = default;

  /// boundaries[i] is the map from degree min_degree+i+1 to min_degree+i.
  ChainComplexZ(int min_degree, std::vector<std::size_t> ranks, std::vector<SparseMatrix> boundaries)
      : min_degree_(min_degree), ranks_(std::move(ranks)), boundaries_(std::move(boundaries)) {
    if (ranks_.empty()) {
      if (!boundaries_.empty()) throw StructuralError("boundaries without modules");
      return;
    }
    if (boundaries_.size() + 1 != ranks_.size()) throw StructuralError("expected one boundary per adjacent pair of degrees");
    for (std::size_t i = 0; i < boundaries_.size(); ++i)
      if (boundaries_[i].rows() != ranks_[i] || boundaries_[i].cols() != ranks_[i + 1])
        throw StructuralError("boundary matrix shape disagrees with module ranks in degree " +
                              std::to_string(min_degree_ + static_cast<int>(i) + 1));
    for (std::size_t i = 0; i + 1 < boundaries_.size(); ++i)
      if (!product_is_zero(boundaries_[i], boundaries_[i + 1]))
        throw StructuralError("boundary of boundary is nonzero at degree " + std::to_string(min_degree_ + static_cast<int>(i) + 2));
  }

  int min_degree() const noexcept { return min_degree_; }
  int max_degree() const noexcept { return min_degree_ + static_cast<int>(ranks_.size()) - 1; }

  std::size_t rank(int degree) const {
    if (degree < min_degree_ || degree > max_degree()) return 0;
    return ranks_[static_cast<std::size_t>(degree - min_degree_)];
  }

  /// Boundary out of `degree`; an empty matrix of the right shape outside range.
  SparseMatrix boundary(int degree) const {
    if (degree <= min_degree_ || degree > max_degree()) return SparseMatrix(rank(degree - 1), rank(degree));
    return boundaries_[static_cast<std::size_t>(degree - min_degree_ - 1)];
  }

  const std::vector<std::size_t>& ranks() const noexcept { return ranks_; }

  /// The subcomplex spanned by the selected basis elements; keep[d - min]
  /// flags basis elements of degree d. Throws if not closed under boundary.
  ChainComplexZ subcomplex(const std::vector<std::vector<bool>>& keep) const {
    check_selection(keep);
    std::vector<std::vector<int>> idx(ranks_.size());
    for (std::size_t d = 0; d < ranks_.size(); ++d)
      for (std::size_t i = 0; i < ranks_[d]; ++i)
        if (keep[d][i]) idx[d].push_back(static_cast<int>(i));
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> bounds;
    for (std::size_t d = 0; d < ranks_.size(); ++d) ranks.push_back(idx[d].size());
    for (std::size_t d = 0; d < boundaries_.size(); ++d) {
      for (int col : idx[d + 1])
        for (const auto& e : boundaries_[d].column(static_cast<std::size_t>(col)))
          if (!keep[d][static_cast<std::size_t>(e.row)]) throw StructuralError("selection is not a subcomplex");
      bounds.push_back(boundaries_[d].submatrix(idx[d], idx[d + 1]));
    }
    return ChainComplexZ(min_degree_, std::move(ranks), std::move(bounds));
  }

  /// The quotient by the subcomplex flagged in `sub`.
  ChainComplexZ quotient(const std::vector<std::vector<bool>>& sub) const {
    check_selection(sub);
    std::vector<std::vector<bool>> rest(ranks_.size());
    for (std::size_t d = 0; d < ranks_.size(); ++d) {
      rest[d].resize(ranks_[d]);
      for (std::size_t i = 0; i < ranks_[d]; ++i) rest[d][i] = !sub[d][i];
    }
    for (std::size_t d = 0; d < boundaries_.size(); ++d)
      for (std::size_t col = 0; col < ranks_[d + 1]; ++col) {
        if (!sub[d + 1][col]) continue;
        for (const auto& e : boundaries_[d].column(col))
          if (!sub[d][static_cast<std::size_t>(e.row)]) throw StructuralError("quotient selection is not a subcomplex");
      }
    std::vector<std::vector<int>> idx(ranks_.size());
    for (std::size_t d = 0; d < ranks_.size(); ++d)
      for (std::size_t i = 0; i < ranks_[d]; ++i)
        if (rest[d][i]) idx[d].push_back(static_cast<int>(i));
    std::vector<std::size_t> ranks;
    std::vector<SparseMatrix> bounds;
    for (std::size_t d = 0; d < ranks_.size(); ++d) ranks.push_back(idx[d].size());
    for (std::size_t d = 0; d < boundaries_.size(); ++d) bounds.push_back(boundaries_[d].submatrix(idx[d], idx[d + 1]));
    return ChainComplexZ(min_degree_, std::move(ranks), std::move(bounds));
  }

 private:
  void check_selection(const std::vector<std::vector<bool>>& sel) const {
    if (sel.size() != ranks_.size()) throw StructuralError("selection has the wrong number of degrees");
    for (std::size_t d = 0; d < ranks_.size(); ++d)
      if (sel[d].size() != ranks_[d]) throw StructuralError("selection has the wrong size");
  }

  int min_degree_ = 0;
  std::vector<std::size_t> ranks_;
  std::vector<SparseMatrix> boundaries_;
};

namespace detail {

inline std::int64_t to_int64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max()) throw StructuralError("torsion coefficient exceeds 64 bits");
  return static_cast<std::int64_t>(v);
}

}  // namespace detail

/// H_d = ker d_d / im d_{d+1} for every degree of the complex.
inline Homology homology(const ChainComplexZ& c) {
  if (c.ranks().empty()) return {};
  std::vector<InvariantFactors> inv;  // inv[i]: boundary out of degree min+i+1
  for (int d = c.min_degree() + 1; d <= c.max_degree(); ++d) inv.push_back(invariant_factors(c.boundary(d)));
  auto rank_out_of = [&](int d) -> std::size_t {
    if (d <= c.min_degree() || d > c.max_degree()) return 0;
    return inv[static_cast<std::size_t>(d - c.min_degree() - 1)].rank;
  };
  std::vector<HomologyGroup> groups;
  for (int d = c.min_degree(); d <= c.max_degree(); ++d) {
    HomologyGroup g;
    g.betti = static_cast<std::int64_t>(c.rank(d)) - static_cast<std::int64_t>(rank_out_of(d)) -
              static_cast<std::int64_t>(rank_out_of(d + 1));
    if (d + 1 <= c.max_degree())
      for (const auto& t : inv[static_cast<std::size_t>(d + 1 - c.min_degree() - 1)].torsion) g.torsion.push_back(detail::to_int64(t));
    groups.push_back(std::move(g));
  }
  return Homology(c.min_degree(), std::move(groups));
}

/// Homology of C / S for the subcomplex S flagged in `sub`.
inline Homology relative_homology(const ChainComplexZ& c, const std::vector<std::vector<bool>>& sub) {
  return homology(c.quotient(sub));
}

}  // namespace dforest
