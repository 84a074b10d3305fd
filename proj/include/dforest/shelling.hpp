#pragma once

// Shelling orders of forest complexes for graphs with a complete source,
// a generic checker for shelling orders, and a backtracking search used
// to certify that a small complex has no shelling at all.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "dforest/complex.hpp"
#include "dforest/errors.hpp"
#include "dforest/graph.hpp"
#include "dforest/simplicial_homology.hpp"

namespace dforest {

/// Sorted multiset of edge sources of a spanning tree.
using FacetLabel = std::vector<Vertex>;

struct ShellingLimits {
  std::size_t max_facets = 10000;      ///< verify_shelling is quadratic in this
  std::size_t max_search_facets = 64;  ///< find_shelling is exponential in this
};

/// Smallest vertex with an out-edge to every other vertex.
inline std::optional<Vertex> has_complete_source(const DirectedGraph& g) {
  const int n = g.n_vertices();
  std::vector<int> out_degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) ++out_degree[static_cast<std::size_t>(e.source)];
  for (int x = 0; x < n; ++x)
    if (out_degree[static_cast<std::size_t>(x)] == n - 1) return x;  // no loops or repeated edges
  return std::nullopt;
}

inline FacetLabel facet_label(const DirectedGraph& g, const EdgeSubset& facet) {
  if (facet.size() + 1 != static_cast<std::size_t>(g.n_vertices()) || !is_directed_forest(g, facet))
    throw InputError("facet_label expects a spanning directed tree");
  FacetLabel label;
  for (EdgeIndex e : facet) label.push_back(g.edge(e).source);
  std::sort(label.begin(), label.end());
  return label;
}

/// Orders equal-label facets; the default is lexicographic on edge indices.
using FacetTieBreak = std::function<bool(const EdgeSubset&, const EdgeSubset&)>;

/// Spanning trees of G sorted lexicographically by label, ties broken by
/// `tie_break`. Labels are compared with the complete source ranked below
/// every other vertex. Requires a complete source.
inline std::vector<EdgeSubset> shelling_order(const DirectedGraph& g, const FacetTieBreak& tie_break = {}) {
  const auto source = has_complete_source(g);
  if (!source) throw InputError("shelling_order needs a graph with a complete source");
  const auto n = static_cast<std::size_t>(g.n_vertices());
  auto ranked_label = [&](const EdgeSubset& f) {
    FacetLabel label;
    for (EdgeIndex e : f) label.push_back(g.edge(e).source == *source ? -1 : g.edge(e).source);
    std::sort(label.begin(), label.end());
    return label;
  };
  std::vector<EdgeSubset> facets;
  for_each_forest_subset(g, n == 0 ? 0 : n - 1, [&](const EdgeSubset& s) {
    if (s.size() + 1 == n || (n == 0 && s.empty())) facets.push_back(s);
    return true;
  });
  std::vector<std::pair<FacetLabel, EdgeSubset>> keyed;
  keyed.reserve(facets.size());
  for (auto& f : facets) keyed.emplace_back(ranked_label(f), std::move(f));
  std::stable_sort(keyed.begin(), keyed.end(), [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return tie_break ? tie_break(a.second, b.second) : a.second < b.second;
  });
  std::vector<EdgeSubset> out;
  out.reserve(keyed.size());
  for (auto& [label, f] : keyed) out.push_back(std::move(f));
  return out;
}

/// Spanning trees of G_n in which vertex 0 is a leaf, in shelling order.
inline std::vector<EdgeSubset> homology_facets(int n) {
  if (n < 2) throw InputError("homology_facets needs n >= 2");
  auto g = complete_double_graph(n);
  std::vector<EdgeSubset> out;
  for (auto& f : shelling_order(g)) {
    auto label = facet_label(g, f);
    if (!std::binary_search(label.begin(), label.end(), 0)) out.push_back(std::move(f));
  }
  return out;
}

namespace detail {

/// Vertex set of a face as a bitset.
class FaceBits {
 public:
  FaceBits() = default;
  FaceBits(std::size_t n_vertices, const Face& f) : words_((n_vertices + 63) / 64, 0) {
    for (int v : f) words_[static_cast<std::size_t>(v) / 64] |= std::uint64_t{1} << (v % 64);
  }

  void reset(int v) { words_[static_cast<std::size_t>(v) / 64] &= ~(std::uint64_t{1} << (v % 64)); }

  /// (this \ other) ∩ mask is nonempty
  bool differs_within(const FaceBits& other, const FaceBits& mask) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~other.words_[i] & mask.words_[i]) return true;
    return false;
  }

  bool operator==(const FaceBits&) const = default;

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : words_) h = (h ^ w) * 1099511628211ull;
    return h;
  }

  std::vector<std::uint64_t>& words() { return words_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  std::vector<std::uint64_t> words_;
};

struct FaceBitsHash {
  std::size_t operator()(const FaceBits& b) const { return b.hash(); }
};

}  // namespace detail

/// Outcome of checking a facet order against the exchange form of the
/// shelling condition.
struct ShellingCheck {
  bool is_shelling = false;
  std::optional<std::size_t> first_failure;  ///< position k at which it broke
  /// Positions whose whole boundary lies in the union of earlier facets.
  std::vector<std::size_t> spanning_positions;
};

/// Checks that for all i < k there are j < k and x in F_k with
/// F_i ∩ F_k ⊆ F_j ∩ F_k = F_k \ {x}. The complex must be pure and `order`
/// a permutation of its facets.
inline ShellingCheck check_shelling(const SimplicialComplex& k, const std::vector<Face>& order,
                                    const ShellingLimits& limits = {}) {
  if (order.size() > limits.max_facets)
    throw GuardExceeded("shelling check limited to " + std::to_string(limits.max_facets) + " facets");
  auto facets = k.facets();
  {
    auto sorted_order = order;
    for (auto& f : sorted_order) std::sort(f.begin(), f.end());
    std::sort(sorted_order.begin(), sorted_order.end());
    std::sort(facets.begin(), facets.end());
    if (sorted_order != facets) throw InputError("order is not a permutation of the facets");
  }
  if (!is_pure(k)) throw InputError("shelling check needs a pure complex");

  const auto nv = static_cast<std::size_t>(std::max(k.n_vertices(), 1));
  std::vector<detail::FaceBits> bits;
  for (const auto& f : order) bits.emplace_back(nv, f);
  std::unordered_set<detail::FaceBits, detail::FaceBitsHash> ridges;  // codimension-one faces seen so far

  ShellingCheck out;
  out.is_shelling = true;
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const auto& f = order[pos];
    if (pos > 0) {
      // exchangeable[x]: F_k \ {x} lies in an earlier facet
      detail::FaceBits exchangeable(nv, {});
      bool all = true;
      for (int x : f) {
        auto ridge = bits[pos];
        ridge.reset(x);
        if (ridges.count(ridge))
          exchangeable.words()[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (x % 64);
        else
          all = false;
      }
      if (all) out.spanning_positions.push_back(pos);
      for (std::size_t i = 0; i < pos; ++i)
        if (!bits[pos].differs_within(bits[i], exchangeable)) {
          out.is_shelling = false;
          out.first_failure = pos;
          return out;
        }
    }
    for (int x : f) {
      auto ridge = bits[pos];
      ridge.reset(x);
      ridges.insert(std::move(ridge));
    }
  }
  return out;
}

inline bool verify_shelling(const SimplicialComplex& k, const std::vector<Face>& order, const ShellingLimits& limits = {}) {
  return check_shelling(k, order, limits).is_shelling;
}

/// Exhaustive search for any shelling order of a pure complex, memoising
/// facet sets from which no completion exists.
inline std::optional<std::vector<Face>> find_shelling(const SimplicialComplex& k, const ShellingLimits& limits = {}) {
  if (!is_pure(k)) return std::nullopt;
  const auto facets = k.facets();
  const std::size_t t = facets.size();
  if (t > limits.max_search_facets || t > 64)
    throw GuardExceeded("shelling search limited to " + std::to_string(std::min<std::size_t>(limits.max_search_facets, 64)) + " facets");
  const auto nv = static_cast<std::size_t>(std::max(k.n_vertices(), 1));
  std::vector<detail::FaceBits> bits;
  for (const auto& f : facets) bits.emplace_back(nv, f);

  // Can facet c follow the facets in `placed`?
  auto extends = [&](std::uint64_t placed, std::size_t c) {
    detail::FaceBits exchangeable(nv, {});
    for (int x : facets[c]) {
      auto ridge = bits[c];
      ridge.reset(x);
      for (std::size_t h = 0; h < t; ++h) {
        if (!(placed >> h & 1)) continue;
        bool inside = true;
        for (std::size_t w = 0; w < ridge.words().size() && inside; ++w)
          if (ridge.words()[w] & ~bits[h].words()[w]) inside = false;
        if (inside) {
          exchangeable.words()[static_cast<std::size_t>(x) / 64] |= std::uint64_t{1} << (x % 64);
          break;
        }
      }
    }
    for (std::size_t g = 0; g < t; ++g)
      if ((placed >> g & 1) && !bits[c].differs_within(bits[g], exchangeable)) return false;
    return true;
  };

  const std::uint64_t full = (t == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << t) - 1);
  std::unordered_set<std::uint64_t> dead;
  std::vector<std::size_t> path;
  std::function<bool(std::uint64_t)> search = [&](std::uint64_t placed) {
    if (placed == full) return true;
    if (dead.count(placed)) return false;
    for (std::size_t c = 0; c < t; ++c) {
      if (placed >> c & 1) continue;
      if (placed != 0 && !extends(placed, c)) continue;
      path.push_back(c);
      if (search(placed | (std::uint64_t{1} << c))) return true;
      path.pop_back();
    }
    dead.insert(placed);
    return false;
  };
  if (t == 0 || !search(0)) return t == 0 ? std::optional<std::vector<Face>>(std::vector<Face>{}) : std::nullopt;
  std::vector<Face> order;
  for (auto c : path) order.push_back(facets[c]);
  return order;
}

/// True when homology alone rules out a shelling: a shellable complex of
/// dimension d is a wedge of d-spheres, so H̃_i = 0 for i < d and H̃_d is free.
inline bool homology_obstructs_shelling(const SimplicialComplex& k) {
  if (!is_pure(k)) return false;
  const auto h = reduced_homology(k);
  for (int d = h.min_degree(); d <= h.max_degree(); ++d) {
    if (d < k.dimension() && !h.at(d).is_zero()) return true;
    if (d == k.dimension() && !h.at(d).is_free()) return true;
  }
  return false;
}

}  // namespace dforest
