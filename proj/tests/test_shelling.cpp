#include <catch_amalgamated.hpp>

#include <random>

#include "dforest/shelling.hpp"
#include "oracles.hpp"

using namespace dforest;

namespace {

EdgeSubset tree(const DirectedGraph& g, std::initializer_list<Edge> edges) {
  EdgeSubset s;
  for (const auto& e : edges) s.push_back(*g.find_edge(e.source, e.target));
  std::sort(s.begin(), s.end());
  return s;
}

/// Random graph on n vertices in which vertex `source` reaches everyone.
DirectedGraph random_graph_with_source(int n, std::mt19937& rng) {
  const int source = static_cast<int>(rng() % static_cast<unsigned>(n));
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && (u == source || rng() % 2)) es.push_back({u, v});
  std::shuffle(es.begin(), es.end(), rng);
  return DirectedGraph(n, es);
}

std::int64_t top_betti(const SimplicialComplex& k) { return reduced_homology(k).at(k.dimension()).betti; }

}  // namespace

TEST_CASE("complete sources", "[shelling]") {
  REQUIRE(has_complete_source(complete_double_graph(4)) == 0);
  REQUIRE_FALSE(has_complete_source(double_string_graph(3)).has_value());
  REQUIRE(has_complete_source(parse_graph("4\n2 0\n2 1\n2 3\n0 1\n")) == 2);
}

TEST_CASE("facet labels are sorted edge sources", "[shelling]") {
  auto g = complete_double_graph(3);
  REQUIRE(facet_label(g, tree(g, {{0, 1}, {0, 2}})) == FacetLabel{0, 0});
  REQUIRE(facet_label(g, tree(g, {{1, 0}, {1, 2}})) == FacetLabel{1, 1});
  REQUIRE(facet_label(g, tree(g, {{2, 0}, {0, 1}})) == FacetLabel{0, 2});
  REQUIRE_THROWS_AS(facet_label(g, tree(g, {{0, 1}})), InputError);
}

TEST_CASE("shelling order of G_3 and G_4", "[shelling]") {
  auto g3 = complete_double_graph(3);
  auto order3 = shelling_order(g3);
  REQUIRE(order3.size() == 9);
  REQUIRE(facet_label(g3, order3.front()) == FacetLabel{0, 0});
  REQUIRE(verify_shelling(build_delta(g3), order3));

  auto g4 = complete_double_graph(4);
  auto order4 = shelling_order(g4);
  REQUIRE(order4.size() == 64);
  REQUIRE(order4 == shelling_order(g4));
  for (std::size_t i = 1; i < order4.size(); ++i) REQUIRE(facet_label(g4, order4[i - 1]) <= facet_label(g4, order4[i]));
  REQUIRE(verify_shelling(build_delta(g4), order4));
  REQUIRE_THROWS_AS(shelling_order(double_string_graph(3)), InputError);
}

TEST_CASE("reversed order of G_3 is checked without error", "[shelling]") {
  auto g3 = complete_double_graph(3);
  auto order = shelling_order(g3);
  std::reverse(order.begin(), order.end());
  auto check = check_shelling(build_delta(g3), order);
  INFO("reversed order is a shelling: " << check.is_shelling);
  SUCCEED();
}

TEST_CASE("verify_shelling rejects non-permutations and non-pure complexes", "[shelling]") {
  auto k = build_delta(complete_double_graph(3));
  auto order = shelling_order(complete_double_graph(3));
  order.pop_back();
  REQUIRE_THROWS_AS(verify_shelling(k, order), InputError);
  auto np = SimplicialComplex::from_facets(3, {{0, 1}, {2}});
  REQUIRE_THROWS_AS(verify_shelling(np, np.facets()), InputError);
  ShellingLimits tight;
  tight.max_facets = 5;
  REQUIRE_THROWS_AS(verify_shelling(k, shelling_order(complete_double_graph(3)), tight), GuardExceeded);
}

TEST_CASE("a disconnected pair of edges is not shellable", "[shelling]") {
  auto k = SimplicialComplex::from_facets(4, {{0, 1}, {2, 3}});
  REQUIRE_FALSE(verify_shelling(k, k.facets()));
  REQUIRE_FALSE(find_shelling(k).has_value());
  auto path = SimplicialComplex::from_facets(4, {{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(find_shelling(path).has_value());
}

TEST_CASE("homology facets", "[shelling]") {
  REQUIRE(homology_facets(3).size() == 4);
  REQUIRE(homology_facets(4).size() == 27);
  REQUIRE(homology_facets(5).size() == 256);
}

TEST_CASE("label order shells every sampled graph with a complete source", "[shelling][property]") {
  std::mt19937 rng(2024);
  std::vector<DirectedGraph> graphs;
  for (int n = 2; n <= 5; ++n) graphs.push_back(complete_double_graph(n));
  for (int i = 0; i < 100; ++i) graphs.push_back(random_graph_with_source(2 + static_cast<int>(rng() % 4), rng));
  for (const auto& g : graphs) {
    auto k = build_delta(g);
    auto order = shelling_order(g);
    auto check = check_shelling(k, order);
    REQUIRE(check.is_shelling);
    // a shelling produces a wedge of top-dimensional spheres, one per spanning facet
    auto h = reduced_homology(k);
    REQUIRE(h.support().size() <= 1);
    if (!h.support().empty()) REQUIRE(h.support().front() == k.dimension());
    REQUIRE(h.at(k.dimension()).is_free());
    REQUIRE(top_betti(k) == static_cast<std::int64_t>(check.spanning_positions.size()));
  }
}

TEST_CASE("spanning facets of G_n are the homology facets", "[shelling]") {
  for (int n = 3; n <= 5; ++n) {
    auto g = complete_double_graph(n);
    auto order = shelling_order(g);
    auto check = check_shelling(build_delta(g), order);
    REQUIRE(check.is_shelling);
    std::vector<EdgeSubset> spanning;
    for (auto pos : check.spanning_positions) spanning.push_back(order[pos]);
    REQUIRE(spanning == homology_facets(n));
  }
}

TEST_CASE("any tie-break inside equal labels still shells", "[shelling][property]") {
  std::mt19937 rng(77);
  for (int n = 3; n <= 4; ++n) {
    auto g = complete_double_graph(n);
    auto k = build_delta(g);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<std::uint32_t> key(g.n_edges());
      for (auto& x : key) x = rng();
      auto by_key = [&](const EdgeSubset& a, const EdgeSubset& b) {
        std::vector<std::uint32_t> ka, kb;
        for (int e : a) ka.push_back(key[static_cast<std::size_t>(e)]);
        for (int e : b) kb.push_back(key[static_cast<std::size_t>(e)]);
        return ka < kb;
      };
      auto order = shelling_order(g, by_key);
      REQUIRE(verify_shelling(k, order));
    }
  }
}

TEST_CASE("delta(C_5) is not shellable", "[shelling]") {
  auto k = build_delta(double_cycle_graph(5));
  REQUIRE(k.facets().size() == 25);
  REQUIRE(homology_obstructs_shelling(k));
  REQUIRE_FALSE(verify_shelling(k, k.facets()));
  REQUIRE_FALSE(find_shelling(k).has_value());
  REQUIRE_FALSE(homology_obstructs_shelling(build_delta(complete_double_graph(4))));
}
