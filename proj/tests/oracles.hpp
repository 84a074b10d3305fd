#pragma once

// Brute-force reference implementations used only by the test suites.
// Each one follows a definition directly and shares no code path with the
// library routine it checks.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dforest/graph.hpp"

namespace oracle {

using dforest::DirectedGraph;
using dforest::EdgeSubset;

/// Directed forest by definition: the weak components are induced
/// subgraphs in which some root reaches every vertex by exactly one walk.
inline bool forest_by_unique_paths(const DirectedGraph& g, const EdgeSubset& s) {
  const int n = g.n_vertices();
  std::vector<std::vector<int>> out(n), und(n);
  for (int i : s) {
    const auto& e = g.edge(i);
    out[e.source].push_back(e.target);
    und[e.source].push_back(e.target);
    und[e.target].push_back(e.source);
  }
  std::vector<int> comp(n, -1);
  for (int start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    std::vector<int> members{start};
    comp[start] = start;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (int w : und[members[k]])
        if (comp[w] < 0) {
          comp[w] = start;
          members.push_back(w);
        }
    bool has_root = false;
    for (int root : members) {
      // walks[v] = number of walks root -> v (capped at 2), any length < 2n
      std::vector<int> total(n, 0), layer(n, 0);
      layer[root] = 1;
      total[root] = 1;
      for (int len = 1; len < 2 * n; ++len) {
        std::vector<int> next(n, 0);
        for (int v = 0; v < n; ++v)
          if (layer[v])
            for (int w : out[v]) next[w] = std::min(2, next[w] + layer[v]);
        for (int v = 0; v < n; ++v) total[v] = std::min(2, total[v] + next[v]);
        layer = next;
      }
      bool ok = true;
      for (int v : members)
        if (total[v] != 1) ok = false;
      if (ok) {
        has_root = true;
        break;
      }
    }
    if (!has_root) return false;
  }
  return true;
}

/// All k-subsets of {0..m-1} filtered by a predicate.
inline std::size_t count_subsets(std::size_t m, std::size_t k, const std::function<bool(const EdgeSubset&)>& pred) {
  std::size_t count = 0;
  EdgeSubset cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      if (pred(cur)) ++count;
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      cur.push_back(static_cast<int>(i));
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return count;
}

/// Rank over Q by fraction-free Gaussian elimination on a dense copy.
inline std::size_t rational_rank(std::vector<std::vector<boost::multiprecision::cpp_int>> a) {
  using boost::multiprecision::cpp_int;
  const std::size_t m = a.size();
  if (m == 0) return 0;
  const std::size_t n = a[0].size();
  std::size_t rank = 0;
  cpp_int prev = 1;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t p = rank;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) a[i][j] = (a[i][j] * a[rank][col] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

inline std::vector<int> random_permutation(std::size_t n, std::mt19937& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Edge permutations induced by all n! vertex permutations that map the
/// edge list onto itself (label-preserving when labels are given).
inline std::set<std::vector<int>> edge_automorphisms(int n, const std::vector<dforest::Edge>& edges,
                                                     const std::vector<int>& labels = {}) {
  std::map<std::pair<int, int>, int> where;
  for (std::size_t i = 0; i < edges.size(); ++i) where[{edges[i].source, edges[i].target}] = static_cast<int>(i);
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::set<std::vector<int>> out;
  do {
    std::vector<int> img;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      auto it = where.find({v[edges[i].source], v[edges[i].target]});
      if (it == where.end() || (!labels.empty() && labels[static_cast<std::size_t>(it->second)] != labels[i])) break;
      img.push_back(it->second);
    }
    if (img.size() == edges.size()) out.insert(img);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

/// Isomorphism of edge-labelled digraphs by trying all vertex bijections;
/// labels must match exactly.
inline bool isomorphic(int n, const std::vector<dforest::Edge>& a, const std::vector<int>& la,
                       const std::vector<dforest::Edge>& b, const std::vector<int>& lb) {
  if (a.size() != b.size()) return false;
  std::map<std::pair<int, int>, int> in_b;
  for (std::size_t i = 0; i < b.size(); ++i) in_b[{b[i].source, b[i].target}] = lb.empty() ? 0 : lb[i];
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) {
      auto it = in_b.find({v[a[i].source], v[a[i].target]});
      ok = it != in_b.end() && it->second == (la.empty() ? 0 : la[i]);
    }
    if (ok) return true;
  } while (std::next_permutation(v.begin(), v.end()));
  return false;
}

/// Number of unlabelled rooted trees with m vertices, from the recurrence
/// a(m+1) = (1/m) sum_{j=1..m} (sum_{d | j} d a(d)) a(m-j+1).
inline std::vector<std::int64_t> rooted_tree_counts(int max_m) {
  std::vector<std::int64_t> a(static_cast<std::size_t>(max_m + 1), 0);
  a[1] = 1;
  for (int m = 1; m < max_m; ++m) {
    std::int64_t s = 0;
    for (int j = 1; j <= m; ++j) {
      std::int64_t inner = 0;
      for (int d = 1; d <= j; ++d)
        if (j % d == 0) inner += d * a[static_cast<std::size_t>(d)];
      s += inner * a[static_cast<std::size_t>(m - j + 1)];
    }
    a[static_cast<std::size_t>(m + 1)] = s / m;
  }
  return a;
}

/// Rank over GF(p), p = 2^31 - 1, by reducing sparse columns against
/// pivots keyed by their lowest row. Never exceeds the rational rank.
inline std::size_t rank_mod_p(const std::vector<std::vector<std::pair<int, std::int64_t>>>& columns) {
  constexpr std::int64_t p = 2147483647;
  auto inverse = [](std::int64_t a) {
    std::int64_t r = 1, e = p - 2;
    a %= p;
    while (e > 0) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  std::map<int, std::map<int, std::int64_t>> pivots;  // lowest row -> column with leading 1
  std::size_t rank = 0;
  for (const auto& col : columns) {
    std::map<int, std::int64_t> v;
    for (auto [r, x] : col) v[r] = ((x % p) + p) % p;
    std::erase_if(v, [](const auto& e) { return e.second == 0; });
    while (!v.empty()) {
      auto it = pivots.find(v.begin()->first);
      if (it == pivots.end()) break;
      const std::int64_t f = v.begin()->second;
      for (auto [r, x] : it->second) {
        auto& y = v[r];
        y = ((y - f * x) % p + p) % p;
        if (y == 0) v.erase(r);
      }
    }
    if (v.empty()) continue;
    const std::int64_t inv = inverse(v.begin()->second);
    for (auto& [r, x] : v) x = x * inv % p;
    pivots.emplace(v.begin()->first, std::move(v));
    ++rank;
  }
  return rank;
}

}  // namespace oracle
