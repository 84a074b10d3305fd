#pragma once

// Directed graphs, directed-forest recognition and enumeration of the
// edge subsets that form directed forests.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dforest/errors.hpp"

namespace dforest {

using Vertex = int;
using EdgeIndex = int;

struct Edge {
  Vertex source;
  Vertex target;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Sorted set of edge indices into a DirectedGraph.
using EdgeSubset = std::vector<EdgeIndex>;

/// A directed graph without loops or repeated edges. Edge identity is the
/// position in the edge list.
class DirectedGraph {
 public:
  DirectedGraph() = default;

  DirectedGraph(int n_vertices, std::vector<Edge> edges)
      : n_vertices_(n_vertices), edges_(std::move(edges)) {
    if (n_vertices_ < 0) throw InputError("negative vertex count");
    std::set<Edge> seen;
    for (const auto& e : edges_) {
      if (e.source < 0 || e.target < 0 || e.source >= n_vertices_ || e.target >= n_vertices_)
        throw InputError("edge " + to_string(e) + " has a vertex out of range");
      if (e.source == e.target) throw InputError("self-loop at vertex " + std::to_string(e.source));
      if (!seen.insert(e).second) throw InputError("duplicate edge " + to_string(e));
    }
  }

  int n_vertices() const noexcept { return n_vertices_; }
  std::size_t n_edges() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeIndex i) const { return edges_.at(static_cast<std::size_t>(i)); }

  std::optional<EdgeIndex> find_edge(Vertex source, Vertex target) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].source == source && edges_[i].target == target) return static_cast<EdgeIndex>(i);
    return std::nullopt;
  }

  bool has_edge(Vertex source, Vertex target) const { return find_edge(source, target).has_value(); }

  /// Same vertex count and same edge set, ignoring edge order.
  bool same_graph_as(const DirectedGraph& other) const {
    if (n_vertices_ != other.n_vertices_) return false;
    std::set<Edge> a(edges_.begin(), edges_.end());
    std::set<Edge> b(other.edges_.begin(), other.edges_.end());
    return a == b;
  }

  /// In-neighbourhood S(x) = { y | y -> x }.
  std::vector<Vertex> in_neighbours(Vertex x) const {
    std::vector<Vertex> out;
    for (const auto& e : edges_)
      if (e.target == x) out.push_back(e.source);
    std::sort(out.begin(), out.end());
    return out;
  }

  static std::string to_string(const Edge& e) {
    return "(" + std::to_string(e.source) + "->" + std::to_string(e.target) + ")";
  }

 private:
  int n_vertices_ = 0;
  std::vector<Edge> edges_;
};

// --- parsing -------------------------------------------------------------

/// Graph file: first meaningful line is the vertex count, every further
/// non-empty line "u v" is an edge u -> v. Lines starting with '#' are
/// comments. Edge indices follow line order.
inline DirectedGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<int> n;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!n) {
      long long count = 0;
      std::string rest;
      if (!(fields >> count) || (fields >> rest) || count < 0)
        throw ParseError(line_no, "expected a non-negative vertex count");
      n = static_cast<int>(count);
      continue;
    }
    long long u = 0, v = 0;
    std::string rest;
    if (!(fields >> u >> v) || (fields >> rest)) throw ParseError(line_no, "expected \"u v\"");
    if (u < 0 || v < 0 || u >= *n || v >= *n) throw ParseError(line_no, "vertex out of range");
    if (u == v) throw ParseError(line_no, "self-loop");
    Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!seen.insert(e).second) throw ParseError(line_no, "duplicate edge");
    edges.push_back(e);
  }
  if (!n) throw ParseError(line_no, "missing vertex count");
  return DirectedGraph(*n, std::move(edges));
}

inline std::string format_graph(const DirectedGraph& g) {
  std::string out = std::to_string(g.n_vertices()) + "\n";
  for (const auto& e : g.edges()) out += std::to_string(e.source) + " " + std::to_string(e.target) + "\n";
  return out;
}

// --- graph families ------------------------------------------------------

/// G_n: one edge in each direction between every pair, ordered
/// lexicographically by (source, target).
inline DirectedGraph complete_double_graph(int n) {
  if (n < 1) throw InputError("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) edges.push_back({i, j});
  return DirectedGraph(n, std::move(edges));
}

/// C_n on Z_n. Edge 2i is (i+1 -> i), edge 2i+1 is (i -> i+1).
inline DirectedGraph double_cycle_graph(int n) {
  if (n < 3) throw InputError("double cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({(i + 1) % n, i});
    edges.push_back({i, (i + 1) % n});
  }
  return DirectedGraph(n, std::move(edges));
}

/// L_n on n+1 vertices. Edge 2i is (i+1 -> i), edge 2i+1 is (i -> i+1), so
/// consecutive edge indices are exactly the pairs that cannot coexist in a
/// forest.
inline DirectedGraph double_string_graph(int n) {
  if (n < 1) throw InputError("double string needs n >= 1");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    edges.push_back({i + 1, i});
    edges.push_back({i, i + 1});
  }
  return DirectedGraph(n + 1, std::move(edges));
}

/// L_n with one extra vertex n+1 and the single edge (n+1 -> n) appended.
inline DirectedGraph string_with_tail(int n) {
  if (n < 1) throw InputError("string with tail needs n >= 1");
  auto edges = double_string_graph(n).edges();
  edges.push_back({n + 1, n});
  return DirectedGraph(n + 2, std::move(edges));
}

/// Parses "complete:n", "cycle:n", "string:n" and "string_tail:n".
inline DirectedGraph builtin_graph(std::string_view spec) {
  auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw InputError("builtin spec must look like name:n");
  std::string name(spec.substr(0, colon));
  std::string arg(spec.substr(colon + 1));
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(arg, &used);
    if (used != arg.size()) throw InputError("bad integer");
  } catch (const std::exception&) {
    throw InputError("builtin spec has a non-integer size: " + std::string(spec));
  }
  if (name == "complete") return complete_double_graph(n);
  if (name == "cycle") return double_cycle_graph(n);
  if (name == "string") return double_string_graph(n);
  if (name == "string_tail") return string_with_tail(n);
  throw InputError("unknown builtin graph family: " + name);
}

// --- forests -------------------------------------------------------------

namespace detail {

inline int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

}  // namespace detail

/// True iff (V(G), s) has in-degree at most one everywhere and its
/// underlying undirected graph is acyclic.
inline bool is_directed_forest(const DirectedGraph& g, const EdgeSubset& s) {
  const auto n = static_cast<std::size_t>(g.n_vertices());
  std::vector<int> in_degree(n, 0);
  std::vector<int> uf(n);
  std::iota(uf.begin(), uf.end(), 0);
  for (EdgeIndex i : s) {
    const Edge& e = g.edge(i);
    if (++in_degree[static_cast<std::size_t>(e.target)] > 1) return false;
    int a = detail::find_root(uf, e.source);
    int b = detail::find_root(uf, e.target);
    if (a == b) return false;
    uf[static_cast<std::size_t>(a)] = b;
  }
  return true;
}

/// Visits every directed-forest edge subset (including the empty one) of
/// size at most max_size, in lexicographic order of the sorted index lists.
/// The visitor returns false to stop early.
inline void for_each_forest_subset(const DirectedGraph& g, std::optional<std::size_t> max_size,
                                   const std::function<bool(const EdgeSubset&)>& visit) {
  const std::size_t m = g.n_edges();
  const std::size_t cap = max_size.value_or(m);
  const auto n = static_cast<std::size_t>(g.n_vertices());
  EdgeSubset current;
  std::vector<int> in_degree(n, 0);
  std::vector<int> component(n);
  std::iota(component.begin(), component.end(), 0);
  bool stop = false;

  std::function<void(std::size_t)> extend = [&](std::size_t start) {
    if (!visit(current)) {
      stop = true;
      return;
    }
    if (current.size() == cap) return;
    for (std::size_t i = start; i < m && !stop; ++i) {
      const Edge& e = g.edges()[i];
      const int cs = component[static_cast<std::size_t>(e.source)];
      const int ct = component[static_cast<std::size_t>(e.target)];
      if (in_degree[static_cast<std::size_t>(e.target)] != 0 || cs == ct) continue;
      auto saved = component;
      for (auto& c : component)
        if (c == ct) c = cs;
      ++in_degree[static_cast<std::size_t>(e.target)];
      current.push_back(static_cast<EdgeIndex>(i));
      extend(i + 1);
      current.pop_back();
      --in_degree[static_cast<std::size_t>(e.target)];
      component = std::move(saved);
    }
  };
  extend(0);
}

/// All forest subsets grouped by cardinality: result[k] holds the k-edge
/// forests in lexicographic order.
inline std::vector<std::vector<EdgeSubset>> enumerate_forest_subsets(const DirectedGraph& g,
                                                                     std::optional<std::size_t> max_size = {}) {
  std::vector<std::vector<EdgeSubset>> by_size;
  for_each_forest_subset(g, max_size, [&](const EdgeSubset& s) {
    if (by_size.size() <= s.size()) by_size.resize(s.size() + 1);
    by_size[s.size()].push_back(s);
    return true;
  });
  return by_size;
}

/// Disjoint union; the vertices and edges of b are shifted past those of a.
inline DirectedGraph disjoint_union(const DirectedGraph& a, const DirectedGraph& b) {
  auto edges = a.edges();
  for (const auto& e : b.edges()) edges.push_back({e.source + a.n_vertices(), e.target + a.n_vertices()});
  return DirectedGraph(a.n_vertices() + b.n_vertices(), std::move(edges));
}

}  // namespace dforest
