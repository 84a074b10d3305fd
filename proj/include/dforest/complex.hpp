#pragma once

// Abstract simplicial complexes on vertices 0..n-1, the complexes of
// directed forests, and the independence complexes of paths and cycles.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dforest/errors.hpp"
#include "dforest/graph.hpp"

namespace dforest {

using Face = std::vector<int>;

/// A simplicial complex stored as sorted faces per dimension. The empty
/// face is always present implicitly, so the smallest complex is {∅}.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Takes the complete face list; validates closure under taking facets.
  static SimplicialComplex from_faces(int n_vertices, std::vector<Face> faces) {
    SimplicialComplex k;
    k.n_vertices_ = n_vertices;
    for (auto& f : faces) {
      if (f.empty()) continue;
      std::sort(f.begin(), f.end());
      if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw InputError("face with a repeated vertex");
      if (f.front() < 0 || f.back() >= n_vertices) throw InputError("face vertex out of range");
      const auto d = f.size() - 1;
      if (k.faces_.size() <= d) k.faces_.resize(d + 1);
      k.faces_[d].push_back(std::move(f));
    }
    for (auto& level : k.faces_) {
      std::sort(level.begin(), level.end());
      level.erase(std::unique(level.begin(), level.end()), level.end());
    }
    for (std::size_t d = 1; d < k.faces_.size(); ++d)
      for (const auto& f : k.faces_[d])
        for (std::size_t i = 0; i < f.size(); ++i)
          if (!k.contains(without(f, i))) throw StructuralError("face list is not closed under taking subfaces");
    return k;
  }

  /// Downward closure of the given faces.
  static SimplicialComplex from_facets(int n_vertices, const std::vector<Face>& facets) {
    std::set<Face> all;
    for (auto f : facets) {
      std::sort(f.begin(), f.end());
      const auto m = f.size();
      if (m >= 31) throw GuardExceeded("facet too large to close");
      for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
        Face sub;
        for (std::size_t i = 0; i < m; ++i)
          if (mask & (1u << i)) sub.push_back(f[i]);
        all.insert(std::move(sub));
      }
    }
    return from_faces(n_vertices, std::vector<Face>(all.begin(), all.end()));
  }

  int n_vertices() const noexcept { return n_vertices_; }

  /// Dimension; -1 for {∅}.
  int dimension() const noexcept { return static_cast<int>(faces_.size()) - 1; }

  /// Faces of dimension d, lexicographically sorted. d = -1 gives {∅}.
  const std::vector<Face>& faces(int d) const {
    static const std::vector<Face> none;
    static const std::vector<Face> empty_face{Face{}};
    if (d == -1) return empty_face;
    if (d < -1 || d > dimension()) return none;
    return faces_[static_cast<std::size_t>(d)];
  }

  std::size_t face_count(int d) const { return faces(d).size(); }

  std::size_t total_faces() const {
    std::size_t n = 0;
    for (const auto& l : faces_) n += l.size();
    return n;
  }

  bool contains(const Face& f) const {
    if (f.empty()) return true;
    const auto& level = faces(static_cast<int>(f.size()) - 1);
    return std::binary_search(level.begin(), level.end(), f);
  }

  /// Position of f among the faces of its dimension, or -1.
  long index_of(const Face& f) const {
    const auto& level = faces(static_cast<int>(f.size()) - 1);
    auto it = std::lower_bound(level.begin(), level.end(), f);
    if (it == level.end() || *it != f) return -1;
    return static_cast<long>(it - level.begin());
  }

  /// Maximal faces, in increasing dimension then lexicographic order.
  std::vector<Face> facets() const {
    std::vector<Face> out;
    if (faces_.empty()) return {Face{}};
    for (int d = 0; d <= dimension(); ++d) {
      std::set<Face> covered;
      if (d < dimension())
        for (const auto& g : faces_[static_cast<std::size_t>(d + 1)])
          for (std::size_t i = 0; i < g.size(); ++i) covered.insert(without(g, i));
      for (const auto& f : faces_[static_cast<std::size_t>(d)])
        if (!covered.count(f)) out.push_back(f);
    }
    return out;
  }

  /// The complex with the maximal face f removed.
  SimplicialComplex without_facet(const Face& f) const {
    auto sorted = f;
    std::sort(sorted.begin(), sorted.end());
    if (!contains(sorted)) throw InputError("face is not in the complex");
    if (sorted.empty()) throw InputError("cannot remove the empty face");
    SimplicialComplex k = *this;
    auto& level = k.faces_[sorted.size() - 1];
    level.erase(std::lower_bound(level.begin(), level.end(), sorted));
    while (!k.faces_.empty() && k.faces_.back().empty()) k.faces_.pop_back();
    for (std::size_t d = sorted.size(); d < k.faces_.size(); ++d)
      for (const auto& g : k.faces_[d])
        if (std::includes(g.begin(), g.end(), sorted.begin(), sorted.end()))
          throw InputError("face is not maximal");
    return k;
  }

  /// Image under the vertex map v -> perm[v] (perm must be injective).
  SimplicialComplex relabel(const std::vector<int>& perm, int new_n_vertices = -1) const {
    std::vector<Face> all;
    for (const auto& level : faces_)
      for (const auto& f : level) {
        Face g;
        for (int v : f) g.push_back(perm.at(static_cast<std::size_t>(v)));
        all.push_back(std::move(g));
      }
    return from_faces(new_n_vertices < 0 ? n_vertices_ : new_n_vertices, std::move(all));
  }

  friend bool operator==(const SimplicialComplex&, const SimplicialComplex&) = default;

  static Face without(const Face& f, std::size_t i) {
    Face g;
    g.reserve(f.size() - 1);
    for (std::size_t j = 0; j < f.size(); ++j)
      if (j != i) g.push_back(f[j]);
    return g;
  }

 private:
  int n_vertices_ = 0;
  std::vector<std::vector<Face>> faces_;
};

/// Homotopy type given as a point or a wedge of spheres.
class HomotopyType {
 public:
  static HomotopyType point() { return HomotopyType{}; }

  static HomotopyType wedge(std::vector<int> sphere_dimensions) {
    if (sphere_dimensions.empty()) throw InputError("an empty wedge is written as a point");
    for (int d : sphere_dimensions)
      if (d < 0) throw InputError("negative sphere dimension");
    std::sort(sphere_dimensions.begin(), sphere_dimensions.end());
    HomotopyType h;
    h.spheres_ = std::move(sphere_dimensions);
    return h;
  }

  static HomotopyType sphere(int d) { return wedge({d}); }

  bool is_point() const noexcept { return spheres_.empty(); }
  const std::vector<int>& sphere_dimensions() const noexcept { return spheres_; }

  /// Reduced Betti numbers: degree -> number of spheres of that dimension.
  std::map<int, std::int64_t> reduced_betti() const {
    std::map<int, std::int64_t> out;
    for (int d : spheres_) ++out[d];
    return out;
  }

  friend bool operator==(const HomotopyType&, const HomotopyType&) = default;

 private:
  std::vector<int> spheres_;
};

inline std::string to_string(const HomotopyType& h) {
  if (h.is_point()) return "point";
  std::string out;
  for (int d : h.sphere_dimensions()) out += (out.empty() ? "" : " v ") + std::string("S^") + std::to_string(d);
  return out;
}

// --- constructions -------------------------------------------------------

/// Δ(G): vertices are the edge indices of G, faces the directed forests.
inline SimplicialComplex build_delta(const DirectedGraph& g) {
  std::vector<Face> faces;
  for_each_forest_subset(g, std::nullopt, [&](const EdgeSubset& s) {
    if (!s.empty()) faces.push_back(s);
    return true;
  });
  return SimplicialComplex::from_faces(static_cast<int>(g.n_edges()), std::move(faces));
}

namespace detail {

/// Independent sets of a graph on 0..n-1 given by an adjacency predicate.
template <class Adjacent>
std::vector<Face> independent_sets(int n, Adjacent adjacent) {
  std::vector<Face> out;
  Face current;
  auto extend = [&](auto& self, int start) -> void {
    if (!current.empty()) out.push_back(current);
    for (int v = start; v < n; ++v) {
      bool ok = true;
      for (int u : current)
        if (adjacent(u, v)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      current.push_back(v);
      self(self, v + 1);
      current.pop_back();
    }
  };
  extend(extend, 0);
  return out;
}

}  // namespace detail

/// Independence complex of the path 0 - 1 - ... - (n-1).
inline SimplicialComplex l_complex(int n) {
  if (n < 1) throw InputError("path independence complex needs n >= 1");
  return SimplicialComplex::from_faces(n, detail::independent_sets(n, [](int u, int v) { return v - u == 1; }));
}

/// Independence complex of the n-cycle.
inline SimplicialComplex c_complex(int n) {
  if (n < 3) throw InputError("cycle independence complex needs n >= 3");
  return SimplicialComplex::from_faces(n, detail::independent_sets(n, [n](int u, int v) {
                                         return v - u == 1 || (u == 0 && v == n - 1);
                                       }));
}

inline bool is_pure(const SimplicialComplex& k) {
  const auto fs = k.facets();
  for (const auto& f : fs)
    if (f.size() != fs.back().size()) return false;
  return true;
}

/// True iff every maximal forest of G is a spanning tree, i.e. Δ(G) is pure
/// with facets of n-1 edges. Decided without building Δ(G): it fails exactly
/// when there are disjoint vertex sets V1, V2 carrying directed trees rooted
/// at x1, x2 that contain the in-neighbourhoods S(x1), S(x2).
inline bool purity_criterion(const DirectedGraph& g) {
  const int n = g.n_vertices();
  if (n < 1) throw InputError("purity criterion needs at least one vertex");
  if (n > 20) throw GuardExceeded("purity criterion is exponential in the vertex count");
  std::vector<std::uint32_t> out_mask(static_cast<std::size_t>(n), 0), in_mask(static_cast<std::size_t>(n), 0);
  for (const auto& e : g.edges()) {
    out_mask[static_cast<std::size_t>(e.source)] |= 1u << e.target;
    in_mask[static_cast<std::size_t>(e.target)] |= 1u << e.source;
  }
  // reach[x] = vertex sets V containing x, with S(x) inside V, that x spans
  // by a directed tree in the induced subgraph.
  auto spans = [&](int x, std::uint32_t set) {
    std::uint32_t seen = 1u << x, frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 0; v < n; ++v)
        if (frontier & (1u << v)) next |= out_mask[static_cast<std::size_t>(v)] & set;
      frontier = next & ~seen;
      seen |= next;
    }
    return seen == set;
  };
  const std::uint32_t all = (n == 32) ? ~0u : ((1u << n) - 1);
  std::vector<std::vector<std::uint32_t>> rooted(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (std::uint32_t set = all; set; set = (set - 1) & all) {
      if (!(set & (1u << x))) continue;
      if ((in_mask[static_cast<std::size_t>(x)] & ~set) != 0) continue;
      if (spans(x, set)) rooted[static_cast<std::size_t>(x)].push_back(set);
    }
  for (int x1 = 0; x1 < n; ++x1)
    for (int x2 = x1 + 1; x2 < n; ++x2)
      for (auto a : rooted[static_cast<std::size_t>(x1)])
        for (auto b : rooted[static_cast<std::size_t>(x2)])
          if ((a & b) == 0) return false;
  return true;
}

/// K1 * K2 on the disjoint union of vertex sets (K2 shifted past K1).
inline SimplicialComplex join(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::vector<Face> faces;
  const int shift = a.n_vertices();
  for (int da = -1; da <= a.dimension(); ++da)
    for (const auto& fa : a.faces(da))
      for (int db = -1; db <= b.dimension(); ++db)
        for (const auto& fb : b.faces(db)) {
          Face f = fa;
          for (int v : fb) f.push_back(v + shift);
          if (!f.empty()) faces.push_back(std::move(f));
        }
  return SimplicialComplex::from_faces(a.n_vertices() + b.n_vertices(), std::move(faces));
}

/// Reduced Euler characteristic: -1 + sum_d (-1)^d f_d.
inline std::int64_t euler_characteristic(const SimplicialComplex& k) {
  std::int64_t chi = -1;
  for (int d = 0; d <= k.dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(k.face_count(d));
  return chi;
}

/// One face per line as comma-separated vertex ids, by increasing dimension.
inline std::string dump_complex(const SimplicialComplex& k) {
  std::string out;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& f : k.faces(d)) {
      for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + std::to_string(f[i]);
      out += "\n";
    }
  return out;
}

}  // namespace dforest
