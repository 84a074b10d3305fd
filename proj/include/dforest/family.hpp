#pragma once

// Closed-form homotopy types for the path, string and cycle families, and
// a recursive homology calculator for graphs that are essentially trees.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "dforest/chain_complex.hpp"
#include "dforest/complex.hpp"
#include "dforest/errors.hpp"
#include "dforest/graph.hpp"

namespace dforest {

/// Free reduced homology: degree -> rank. Zero ranks are never stored.
class GradedHomologyPrediction {
 public:
  GradedHomologyPrediction() = default;
  explicit GradedHomologyPrediction(std::map<int, std::int64_t> ranks) : ranks_(std::move(ranks)) { prune(); }

  /// Reduced homology of {∅}: Z in degree -1.
  static GradedHomologyPrediction empty_face() { return GradedHomologyPrediction(std::map<int, std::int64_t>{{-1, 1}}); }
  static GradedHomologyPrediction contractible() { return {}; }
  static GradedHomologyPrediction of(const HomotopyType& h) { return GradedHomologyPrediction(h.reduced_betti()); }

  const std::map<int, std::int64_t>& ranks() const noexcept { return ranks_; }
  std::int64_t rank(int degree) const {
    auto it = ranks_.find(degree);
    return it == ranks_.end() ? 0 : it->second;
  }
  bool is_zero() const noexcept { return ranks_.empty(); }

  GradedHomologyPrediction suspended() const {
    std::map<int, std::int64_t> out;
    for (const auto& [d, r] : ranks_) out[d + 1] = r;
    return GradedHomologyPrediction(std::move(out));
  }

  GradedHomologyPrediction times(std::int64_t m) const {
    std::map<int, std::int64_t> out;
    for (const auto& [d, r] : ranks_) out[d] = r * m;
    return GradedHomologyPrediction(std::move(out));
  }

  friend GradedHomologyPrediction operator+(const GradedHomologyPrediction& a, const GradedHomologyPrediction& b) {
    auto out = a.ranks_;
    for (const auto& [d, r] : b.ranks_) out[d] += r;
    return GradedHomologyPrediction(std::move(out));
  }

  /// Reduced homology of a join: H̃_r(K*L) = sum_{i+j=r-1} H̃_i(K) ⊗ H̃_j(L).
  friend GradedHomologyPrediction join(const GradedHomologyPrediction& a, const GradedHomologyPrediction& b) {
    std::map<int, std::int64_t> out;
    for (const auto& [i, ra] : a.ranks_)
      for (const auto& [j, rb] : b.ranks_) out[i + j + 1] += ra * rb;
    return GradedHomologyPrediction(std::move(out));
  }

  Homology to_homology() const {
    if (ranks_.empty()) return {};
    const int lo = ranks_.begin()->first, hi = ranks_.rbegin()->first;
    std::vector<HomologyGroup> groups(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [d, r] : ranks_) groups[static_cast<std::size_t>(d - lo)].betti = r;
    return Homology(lo, std::move(groups));
  }

  friend bool operator==(const GradedHomologyPrediction&, const GradedHomologyPrediction&) = default;

 private:
  void prune() {
    for (auto it = ranks_.begin(); it != ranks_.end();)
      it = (it->second == 0) ? ranks_.erase(it) : std::next(it);
  }

  std::map<int, std::int64_t> ranks_;
};

inline std::string to_string(const GradedHomologyPrediction& p) { return to_string(p.to_homology()); }

// --- closed forms --------------------------------------------------------

struct PathComplexType {
  HomotopyType type;
  std::optional<Face> generator;  ///< 0-based generating simplex when a sphere
};

/// Homotopy type of the path independence complex on n vertices.
inline PathComplexType l_homotopy(int n) {
  if (n < 1) throw InputError("path independence complex needs n >= 1");
  const int k = n / 3;
  Face gen;
  switch (n % 3) {
    case 0:
      for (int v = 1; v <= 3 * k - 2; v += 3) gen.push_back(v);
      return {HomotopyType::sphere(k - 1), gen};
    case 1:
      return {HomotopyType::point(), std::nullopt};
    default:
      for (int v = 1; v <= 3 * k + 1; v += 3) gen.push_back(v);
      return {HomotopyType::sphere(k), gen};
  }
}

/// Homotopy type of Δ(L_n).
inline HomotopyType delta_string_homotopy(int n) {
  if (n < 1) throw InputError("double string needs n >= 1");
  const int k = n / 3;
  switch (n % 3) {
    case 0: return HomotopyType::sphere(2 * k - 1);
    case 1: return HomotopyType::sphere(2 * k);
    default: return HomotopyType::point();
  }
}

/// Homotopy type of the cycle independence complex on n vertices.
inline HomotopyType c_homotopy(int n) {
  if (n < 3) throw InputError("cycle independence complex needs n >= 3");
  const int k = n / 3;
  switch (n % 3) {
    case 0: return HomotopyType::wedge({k - 1, k - 1});
    case 1: return HomotopyType::sphere(k - 1);
    default: return HomotopyType::sphere(k);
  }
}

/// Homotopy type of Δ(C_n).
inline HomotopyType delta_cycle_homotopy(int n) {
  if (n < 3) throw InputError("double cycle needs n >= 3");
  const int k = n / 3;
  switch (n % 3) {
    case 0: return HomotopyType::wedge({2 * k - 1, 2 * k - 1, 3 * k - 2, 3 * k - 2});
    case 1: return HomotopyType::wedge({2 * k, 3 * k - 1, 3 * k - 1});
    default: return HomotopyType::wedge({2 * k, 3 * k, 3 * k});
  }
}

// --- essentially trees ---------------------------------------------------

/// True iff merging antiparallel pairs and forgetting directions gives a tree.
inline bool is_essentially_tree(const DirectedGraph& g) {
  const int n = g.n_vertices();
  if (n == 0) return false;
  std::set<std::pair<int, int>> undirected;
  for (const auto& e : g.edges()) undirected.insert({std::min(e.source, e.target), std::max(e.source, e.target)});
  if (undirected.size() != static_cast<std::size_t>(n - 1)) return false;
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
  for (const auto& [a, b] : undirected) {
    const int ra = detail::find_root(parent, a), rb = detail::find_root(parent, b);
    if (ra == rb) return false;
    parent[static_cast<std::size_t>(ra)] = rb;
  }
  return true;
}

/// Which reduction was applied at the top level.
enum class ReductionRule { base, split, cone, suspension, multi_out, multi_in, multi_both };

inline std::string to_string(ReductionRule r) {
  switch (r) {
    case ReductionRule::base: return "base";
    case ReductionRule::split: return "split";
    case ReductionRule::cone: return "t1";
    case ReductionRule::suspension: return "t2";
    case ReductionRule::multi_out: return "t3a";
    case ReductionRule::multi_in: return "t3b";
    case ReductionRule::multi_both: return "t3c";
  }
  return "?";
}

struct Irreducible {
  std::string reason;
};

using ReductionOutcome = std::variant<GradedHomologyPrediction, Irreducible>;

namespace detail {

/// Subgraph induced on the kept vertices (renumbered in order), minus the
/// listed edges.
inline DirectedGraph restrict_graph(const DirectedGraph& g, const std::vector<bool>& keep,
                                    const std::set<std::pair<int, int>>& drop_edges = {}) {
  std::vector<int> index(static_cast<std::size_t>(g.n_vertices()), -1);
  int next = 0;
  for (int v = 0; v < g.n_vertices(); ++v)
    if (keep[static_cast<std::size_t>(v)]) index[static_cast<std::size_t>(v)] = next++;
  std::vector<Edge> es;
  for (const auto& e : g.edges()) {
    const int s = index[static_cast<std::size_t>(e.source)], t = index[static_cast<std::size_t>(e.target)];
    if (s < 0 || t < 0 || drop_edges.count({e.source, e.target})) continue;
    es.push_back({s, t});
  }
  return DirectedGraph(next, es);
}

/// Weak components as separate graphs.
inline std::vector<DirectedGraph> weak_components(const DirectedGraph& g) {
  const int n = g.n_vertices();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) parent[static_cast<std::size_t>(v)] = v;
  for (const auto& e : g.edges()) {
    const int a = find_root(parent, e.source), b = find_root(parent, e.target);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  }
  std::map<int, std::vector<bool>> members;
  for (int v = 0; v < n; ++v) {
    auto& m = members[find_root(parent, v)];
    if (m.empty()) m.assign(static_cast<std::size_t>(n), false);
    m[static_cast<std::size_t>(v)] = true;
  }
  std::vector<DirectedGraph> out;
  for (const auto& [root, keep] : members) out.push_back(restrict_graph(g, keep));
  return out;
}

struct Neighbourhood {
  std::vector<std::set<int>> in, out;
  explicit Neighbourhood(const DirectedGraph& g)
      : in(static_cast<std::size_t>(g.n_vertices())), out(static_cast<std::size_t>(g.n_vertices())) {
    for (const auto& e : g.edges()) {
      out[static_cast<std::size_t>(e.source)].insert(e.target);
      in[static_cast<std::size_t>(e.target)].insert(e.source);
    }
  }
  std::set<int> neighbours(int v) const {
    std::set<int> s = in[static_cast<std::size_t>(v)];
    s.insert(out[static_cast<std::size_t>(v)].begin(), out[static_cast<std::size_t>(v)].end());
    return s;
  }
  /// x's only edge is x -> y for some y.
  bool is_in_leaf(int x) const {
    return in[static_cast<std::size_t>(x)].empty() && out[static_cast<std::size_t>(x)].size() == 1;
  }
};

using ReductionTrace = std::vector<ReductionRule>;

inline ReductionOutcome reduce_connected(const DirectedGraph& g, ReductionTrace* trace);

inline ReductionOutcome reduce_any(const DirectedGraph& g, ReductionTrace* trace) {
  auto parts = weak_components(g);
  if (parts.size() == 1) return reduce_connected(g, trace);
  if (trace) trace->push_back(ReductionRule::split);
  auto total = GradedHomologyPrediction::empty_face();
  for (const auto& part : parts) {
    auto r = reduce_connected(part, trace);
    if (auto* irr = std::get_if<Irreducible>(&r)) return *irr;
    total = join(total, std::get<GradedHomologyPrediction>(r));
  }
  return total;
}

inline ReductionOutcome reduce_connected(const DirectedGraph& g, ReductionTrace* trace) {
  const int n = g.n_vertices();
  auto note = [&](ReductionRule r) {
    if (trace) trace->push_back(r);
  };
  if (g.n_edges() == 0) {
    note(ReductionRule::base);
    return GradedHomologyPrediction::empty_face();
  }
  const Neighbourhood nb(g);
  auto in_of = [&](int v) -> const std::set<int>& { return nb.in[static_cast<std::size_t>(v)]; };
  auto out_of = [&](int v) -> const std::set<int>& { return nb.out[static_cast<std::size_t>(v)]; };

  // cone: S(x) = {y} and x is no source
  for (int x = 0; x < n; ++x)
    if (in_of(x).size() == 1 && out_of(x).empty()) {
      note(ReductionRule::cone);
      return GradedHomologyPrediction::contractible();
    }

  // suspension: the only edges at x are x -> y and y -> x
  for (int x = 0; x < n; ++x) {
    if (in_of(x).size() != 1 || out_of(x) != in_of(x)) continue;
    const int y = *in_of(x).begin();
    std::vector<bool> keep(static_cast<std::size_t>(n), true);
    keep[static_cast<std::size_t>(x)] = false;
    std::set<std::pair<int, int>> drop;
    for (int z : in_of(y)) drop.insert({z, y});
    note(ReductionRule::suspension);
    auto r = reduce_any(restrict_graph(g, keep, drop), trace);
    if (auto* p = std::get_if<GradedHomologyPrediction>(&r)) return p->suspended();
    return r;
  }

  // in-leaves x_1..x_k at y, plus one further neighbour z
  struct Star {
    int y = -1, z = -1;
    std::vector<int> leaves;
    ReductionRule rule{};
  };
  // Among all centres, take the first in the order a, b, c (then smallest y).
  std::optional<Star> chosen;
  for (int y = 0; y < n; ++y) {
    std::vector<int> leaves, others;
    for (int v : nb.neighbours(y)) (nb.is_in_leaf(v) && out_of(v).count(y) ? leaves : others).push_back(v);
    if (others.size() > 1) continue;
    if (others.empty()) {
      if (leaves.size() < 2) continue;
      others.push_back(leaves.back());  // a star of in-leaves: one leaf serves as z
      leaves.pop_back();
    }
    if (leaves.empty()) continue;
    const int z = others.front();
    const bool yz = out_of(y).count(z) > 0, zy = in_of(y).count(z) > 0;
    Star s{y, z, leaves, yz && zy ? ReductionRule::multi_both : (yz ? ReductionRule::multi_out : ReductionRule::multi_in)};
    if (!chosen || static_cast<int>(s.rule) < static_cast<int>(chosen->rule)) chosen = s;
  }
  if (!chosen) return Irreducible{"no reduction rule applies"};

  const auto& s = *chosen;
  const auto k = static_cast<std::int64_t>(s.leaves.size());
  std::vector<bool> keep_tilde(static_cast<std::size_t>(n), true);
  for (int x : s.leaves) keep_tilde[static_cast<std::size_t>(x)] = false;
  auto keep_prime = keep_tilde;
  keep_prime[static_cast<std::size_t>(s.y)] = false;
  note(s.rule);

  auto sub = [&](const std::vector<bool>& keep, const std::set<std::pair<int, int>>& drop) -> ReductionOutcome {
    return reduce_any(restrict_graph(g, keep, drop), trace);
  };
  if (s.rule == ReductionRule::multi_out) {
    auto r = sub(keep_tilde, {});
    if (auto* p = std::get_if<GradedHomologyPrediction>(&r)) return p->suspended().times(k - 1);
    return r;
  }
  if (s.rule == ReductionRule::multi_in) {
    auto r = sub(keep_prime, {});
    if (auto* p = std::get_if<GradedHomologyPrediction>(&r)) return p->suspended().times(k);
    return r;
  }
  auto prime = sub(keep_prime, {});
  if (auto* irr = std::get_if<Irreducible>(&prime)) return *irr;
  auto result = std::get<GradedHomologyPrediction>(prime).suspended();
  if (k >= 2) {
    auto tilde = sub(keep_tilde, {{s.z, s.y}});
    if (auto* irr = std::get_if<Irreducible>(&tilde)) return *irr;
    result = result + std::get<GradedHomologyPrediction>(tilde).suspended().times(k - 1);
  }
  return result;
}

}  // namespace detail

/// Reduced homology of Δ(G) for G essentially a tree, by recursive
/// application of the cone, suspension and in-leaf star reductions.
/// `trace`, if given, receives the rules in the order they were applied.
inline ReductionOutcome reduce_essential_tree(const DirectedGraph& g, std::vector<ReductionRule>* trace = nullptr) {
  if (!is_essentially_tree(g)) throw InputError("graph is not essentially a tree");
  return detail::reduce_connected(g, trace);
}

}  // namespace dforest
