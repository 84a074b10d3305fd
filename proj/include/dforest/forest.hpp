#pragma once

// Directed forests up to isomorphism: canonical forms (optionally with
// edge labels), enumeration on n unlabelled vertices, and the group of
// edge permutations induced by forest automorphisms.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "dforest/errors.hpp"
#include "dforest/graph.hpp"

namespace dforest {

/// A directed forest on vertices 0..n_vertices-1. `labels` is empty or
/// holds one integer label per edge.
struct LabelledForest {
  int n_vertices = 0;
  std::vector<Edge> edges;
  std::vector<int> labels;

  std::size_t n_edges() const noexcept { return edges.size(); }
  friend bool operator==(const LabelledForest&, const LabelledForest&) = default;
};

/// Canonical representative of an isomorphism class.
///
/// `layout` numbers the vertices in preorder (trees ordered by code,
/// children by label then code) and lists its edges by increasing head
/// vertex; that edge order is the fixed order used for signs and symmetry
/// groups. Labels are renumbered to 1..m keeping their order.
/// `vertex_map[v]` is the layout vertex of input vertex v.
struct CanonicalForest {
  std::string code;
  LabelledForest layout;
  std::vector<int> vertex_map;

  std::size_t n_edges() const noexcept { return layout.n_edges(); }
  /// Number of distinct labels minus one, or -1 without labels.
  int dimension() const {
    if (layout.labels.empty()) return -1;
    return *std::max_element(layout.labels.begin(), layout.labels.end()) - 1;
  }
};

namespace detail {

inline std::vector<int> normalise_labels(const std::vector<int>& labels) {
  std::vector<int> values = labels;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(static_cast<int>(std::lower_bound(values.begin(), values.end(), l) - values.begin()) + 1);
  return out;
}

}  // namespace detail

/// Canonical form; throws InputError if the edges do not form a forest.
inline CanonicalForest canonical_form(const LabelledForest& f) {
  const int n = f.n_vertices;
  if (!f.labels.empty() && f.labels.size() != f.edges.size()) throw InputError("one label per edge expected");
  {
    DirectedGraph g(n, f.edges);
    EdgeSubset all(f.edges.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    if (!is_directed_forest(g, all)) throw InputError("edges do not form a directed forest");
  }
  const bool labelled = !f.labels.empty();
  const auto labels = labelled ? detail::normalise_labels(f.labels) : std::vector<int>{};

  std::vector<std::vector<std::pair<int, int>>> children(static_cast<std::size_t>(n));  // (child, label)
  std::vector<bool> has_parent(static_cast<std::size_t>(n), false);
  for (std::size_t i = 0; i < f.edges.size(); ++i) {
    children[static_cast<std::size_t>(f.edges[i].source)].push_back({f.edges[i].target, labelled ? labels[i] : 0});
    has_parent[static_cast<std::size_t>(f.edges[i].target)] = true;
  }

  // code(v), and children of v sorted by (label, code)
  std::vector<std::string> code(static_cast<std::size_t>(n));
  std::vector<std::vector<std::pair<std::string, int>>> sorted_children(static_cast<std::size_t>(n));
  std::function<void(int)> encode = [&](int v) {
    auto& entries = sorted_children[static_cast<std::size_t>(v)];
    for (auto [c, l] : children[static_cast<std::size_t>(v)]) {
      encode(c);
      entries.push_back({(labelled ? std::to_string(l) : std::string()) + code[static_cast<std::size_t>(c)], c});
    }
    std::sort(entries.begin(), entries.end());
    std::string s = "(";
    for (const auto& e : entries) s += e.first;
    code[static_cast<std::size_t>(v)] = s + ")";
  };
  std::vector<std::pair<std::string, int>> roots;
  for (int v = 0; v < n; ++v)
    if (!has_parent[static_cast<std::size_t>(v)]) {
      encode(v);
      roots.push_back({code[static_cast<std::size_t>(v)], v});
    }
  std::sort(roots.begin(), roots.end());

  CanonicalForest out;
  out.vertex_map.assign(static_cast<std::size_t>(n), -1);
  out.layout.n_vertices = n;
  int next = 0;
  std::vector<std::pair<int, int>> head_edges;  // (new head, input edge index)
  std::map<std::pair<int, int>, std::size_t> edge_index;
  for (std::size_t i = 0; i < f.edges.size(); ++i) edge_index[{f.edges[i].source, f.edges[i].target}] = i;
  std::function<void(int)> place = [&](int v) {
    out.vertex_map[static_cast<std::size_t>(v)] = next++;
    for (const auto& [s, c] : sorted_children[static_cast<std::size_t>(v)]) {
      head_edges.push_back({next, static_cast<int>(edge_index[{v, c}])});
      place(c);
    }
  };
  for (const auto& [s, v] : roots) {
    out.code += s;
    place(v);
  }
  for (const auto& [head, i] : head_edges) {
    const auto& e = f.edges[static_cast<std::size_t>(i)];
    out.layout.edges.push_back({out.vertex_map[static_cast<std::size_t>(e.source)], head});
    if (labelled) out.layout.labels.push_back(labels[static_cast<std::size_t>(i)]);
  }
  return out;
}

/// All directed forests on n unlabelled vertices with at least `min_edges`
/// edges, canonical, sorted by edge count and then code.
inline std::vector<CanonicalForest> enumerate_forests(int n, int min_edges = 0) {
  if (n < 1) throw InputError("forests need at least one vertex");
  if (n > 12) throw GuardExceeded("forest enumeration limited to 12 vertices");
  // Rooted trees by size, each as a list of child subtrees (size, index).
  struct Tree {
    std::vector<std::pair<int, int>> children;
  };
  std::vector<std::vector<Tree>> trees(static_cast<std::size_t>(n + 1));
  // Multisets of trees with total size `total`, parts in nondecreasing (size, index).
  std::function<void(int, std::pair<int, int>, std::vector<std::pair<int, int>>&, std::vector<std::vector<std::pair<int, int>>>&)>
      multisets = [&](int total, std::pair<int, int> min_part, std::vector<std::pair<int, int>>& cur,
                      std::vector<std::vector<std::pair<int, int>>>& out) {
        if (total == 0) {
          out.push_back(cur);
          return;
        }
        for (int s = min_part.first; s <= total; ++s) {
          const int first = (s == min_part.first) ? min_part.second : 0;
          for (int i = first; i < static_cast<int>(trees[static_cast<std::size_t>(s)].size()); ++i) {
            cur.push_back({s, i});
            multisets(total - s, {s, i}, cur, out);
            cur.pop_back();
          }
        }
      };
  for (int s = 1; s <= n; ++s) {
    std::vector<std::vector<std::pair<int, int>>> parts;
    std::vector<std::pair<int, int>> cur;
    multisets(s - 1, {1, 0}, cur, parts);
    for (auto& p : parts) trees[static_cast<std::size_t>(s)].push_back(Tree{std::move(p)});
  }
  std::vector<std::vector<std::pair<int, int>>> forests;
  std::vector<std::pair<int, int>> cur;
  multisets(n, {1, 0}, cur, forests);

  std::vector<CanonicalForest> out;
  for (const auto& parts : forests) {
    LabelledForest f;
    f.n_vertices = n;
    int next = 0;
    std::function<int(std::pair<int, int>)> build = [&](std::pair<int, int> t) {
      const int v = next++;
      for (auto c : trees[static_cast<std::size_t>(t.first)][static_cast<std::size_t>(t.second)].children) {
        const int w = build(c);
        f.edges.push_back({v, w});
      }
      return v;
    };
    for (auto t : parts) build(t);
    if (static_cast<int>(f.edges.size()) >= min_edges) out.push_back(canonical_form(f));
  }
  std::sort(out.begin(), out.end(), [](const CanonicalForest& a, const CanonicalForest& b) {
    if (a.n_edges() != b.n_edges()) return a.n_edges() < b.n_edges();
    return a.code < b.code;
  });
  return out;
}

/// The edge permutations induced by automorphisms of a forest, relative to
/// its edge order: g maps edge i to edge elements[j][i].
struct EdgeSymmetryGroup {
  int k = 0;
  std::vector<std::vector<int>> elements;  ///< sorted; the identity comes first

  std::size_t order() const noexcept { return elements.size(); }
};

inline int permutation_sign(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

struct SymmetryLimits {
  std::size_t max_edges = 8;
};

/// Symmetry group of a forest relative to the order of `f.edges` (labels
/// are ignored). Built from swaps of isomorphic sibling subtrees, which
/// generate the automorphism group, closed under composition.
inline EdgeSymmetryGroup forest_symmetry_group(const LabelledForest& f, const SymmetryLimits& limits = {}) {
  const auto k = f.edges.size();
  if (k > limits.max_edges)
    throw GuardExceeded("symmetry group limited to " + std::to_string(limits.max_edges) + " edges");
  auto plain = f;
  plain.labels.clear();
  const auto canon = canonical_form(plain);
  const auto& t = canon.layout;
  const int n = t.n_vertices;

  std::vector<int> parent(static_cast<std::size_t>(n), -1), size(static_cast<std::size_t>(n), 1);
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(n));
  for (const auto& e : t.edges) {
    parent[static_cast<std::size_t>(e.target)] = e.source;
    kids[static_cast<std::size_t>(e.source)].push_back(e.target);
  }
  for (int v = n - 1; v >= 0; --v)
    if (parent[static_cast<std::size_t>(v)] >= 0) size[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] += size[static_cast<std::size_t>(v)];
  // Subtree codes, to find isomorphic siblings.
  std::vector<std::string> code(static_cast<std::size_t>(n));
  for (int v = n - 1; v >= 0; --v) {
    std::vector<std::string> parts;
    for (int c : kids[static_cast<std::size_t>(v)]) parts.push_back(code[static_cast<std::size_t>(c)]);
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    for (const auto& p : parts) s += p;
    code[static_cast<std::size_t>(v)] = s + ")";
  }

  // In the layout, edge i has head vertex heads[i]; map vertex -> edge.
  std::vector<int> edge_of(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < k; ++i) edge_of[static_cast<std::size_t>(t.edges[i].target)] = static_cast<int>(i);

  // Generators: swap two equal adjacent sibling subtrees (roots count as
  // siblings; isolated vertices carry no edges and are skipped).
  std::vector<std::vector<int>> generators;
  auto swap_generator = [&](int a, int b) {
    std::vector<int> g(k);
    for (std::size_t i = 0; i < k; ++i) g[i] = static_cast<int>(i);
    for (int off = 0; off < size[static_cast<std::size_t>(a)]; ++off) {
      const int ea = edge_of[static_cast<std::size_t>(a + off)], eb = edge_of[static_cast<std::size_t>(b + off)];
      if (ea >= 0 && eb >= 0) {
        g[static_cast<std::size_t>(ea)] = eb;
        g[static_cast<std::size_t>(eb)] = ea;
      }
    }
    generators.push_back(std::move(g));
  };
  auto sibling_swaps = [&](const std::vector<int>& sibs) {
    for (std::size_t i = 0; i + 1 < sibs.size(); ++i)
      if (code[static_cast<std::size_t>(sibs[i])] == code[static_cast<std::size_t>(sibs[i + 1])]) swap_generator(sibs[i], sibs[i + 1]);
  };
  std::vector<int> roots;
  for (int v = 0; v < n; ++v)
    if (parent[static_cast<std::size_t>(v)] < 0) roots.push_back(v);
  sibling_swaps(roots);
  for (int v = 0; v < n; ++v) sibling_swaps(kids[static_cast<std::size_t>(v)]);

  // Closure.
  std::vector<int> id(k);
  for (std::size_t i = 0; i < k; ++i) id[i] = static_cast<int>(i);
  std::set<std::vector<int>> group{id};
  std::vector<std::vector<int>> frontier{id};
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& g : frontier)
      for (const auto& s : generators) {
        std::vector<int> h(k);
        for (std::size_t i = 0; i < k; ++i) h[i] = s[static_cast<std::size_t>(g[i])];
        if (group.insert(h).second) next.push_back(std::move(h));
      }
    frontier = std::move(next);
  }

  // Conjugate back to the input edge order: input edge i is layout edge pos[i].
  std::vector<int> pos(k), back(k);
  for (std::size_t i = 0; i < k; ++i) {
    const int head = canon.vertex_map[static_cast<std::size_t>(f.edges[i].target)];
    pos[i] = edge_of[static_cast<std::size_t>(head)];
    back[static_cast<std::size_t>(pos[i])] = static_cast<int>(i);
  }
  EdgeSymmetryGroup out;
  out.k = static_cast<int>(k);
  for (const auto& g : group) {
    std::vector<int> h(k);
    for (std::size_t i = 0; i < k; ++i) h[i] = back[static_cast<std::size_t>(g[static_cast<std::size_t>(pos[i])])];
    out.elements.push_back(std::move(h));
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

/// Every symmetry acts on the edges by an even permutation.
inline bool is_admissible(const LabelledForest& f, const SymmetryLimits& limits = {}) {
  for (const auto& g : forest_symmetry_group(f, limits).elements)
    if (permutation_sign(g) < 0) return false;
  return true;
}

}  // namespace dforest
