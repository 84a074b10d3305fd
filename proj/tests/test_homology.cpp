#include <catch_amalgamated.hpp>

#include <random>

#include "dforest/simplicial_homology.hpp"
#include "oracles.hpp"

using namespace dforest;

namespace {

SimplicialComplex triangle() { return SimplicialComplex::from_facets(3, {{0, 1, 2}}); }
SimplicialComplex triangle_boundary() { return SimplicialComplex::from_facets(3, {{0, 1}, {0, 2}, {1, 2}}); }

std::vector<std::vector<BigInt>> dense_rows(const SparseMatrix& m) {
  std::vector<std::vector<BigInt>> out(m.rows(), std::vector<BigInt>(m.cols()));
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (const auto& e : m.column(j)) out[static_cast<std::size_t>(e.row)][j] = e.value;
  return out;
}

}  // namespace

TEST_CASE("homology of an edge and of a circle", "[homology]") {
  auto edge = SimplicialComplex::from_facets(2, {{0, 1}});
  REQUIRE(reduced_homology(edge).is_zero());
  auto h = reduced_homology(triangle_boundary());
  REQUIRE(h.at(1) == HomologyGroup{1, {}});
  REQUIRE(h.support() == std::vector<int>{1});
  REQUIRE(reduced_homology(SimplicialComplex{}).at(-1) == HomologyGroup{1, {}});
}

TEST_CASE("boundary of boundary vanishes on delta(C_5)", "[homology]") {
  auto c = chain_complex_of(build_delta(double_cycle_graph(5)));
  for (int d = 1; d <= 3; ++d) REQUIRE(product_is_zero(c.boundary(d), c.boundary(d + 1)));
}

TEST_CASE("chain complexes with nonzero composite are rejected", "[homology]") {
  SparseMatrix d1(1, 1), d2(1, 1);
  d1.set_column(0, {{0, 1}});
  d2.set_column(0, {{0, 1}});
  REQUIRE_THROWS_AS(ChainComplexZ(0, {1, 1, 1}, {d1, d2}), StructuralError);
  REQUIRE_THROWS_AS(ChainComplexZ(0, {2, 1}, {d1}), StructuralError);
}

TEST_CASE("homology with torsion", "[homology]") {
  // Z --2--> Z
  SparseMatrix d(1, 1);
  d.set_column(0, {{0, 2}});
  auto h = homology(ChainComplexZ(0, {1, 1}, {d}));
  REQUIRE(h.at(0) == HomologyGroup{0, {2}});
  REQUIRE(h.at(1).is_zero());
  REQUIRE(to_string(h.at(0)) == "Z/2");
}

TEST_CASE("delta(C_5) is S2 v S3 v S3", "[homology]") {
  auto h = reduced_homology(build_delta(double_cycle_graph(5)));
  REQUIRE(h.at(2) == HomologyGroup{1, {}});
  REQUIRE(h.at(3) == HomologyGroup{2, {}});
  REQUIRE(h.support() == std::vector<int>{2, 3});
}

TEST_CASE("delta(G_4) is a wedge of 27 two-spheres", "[homology]") {
  auto h = reduced_homology(build_delta(complete_double_graph(4)));
  REQUIRE(h.at(2) == HomologyGroup{27, {}});
  REQUIRE(h.support() == std::vector<int>{2});
}

TEST_CASE("delta(L_5) is acyclic", "[homology]") {
  REQUIRE(reduced_homology(build_delta(double_string_graph(5))).is_zero());
}

TEST_CASE("relative homology", "[homology]") {
  auto k = build_delta(double_cycle_graph(4));
  REQUIRE(relative_homology(k, k).is_zero());
  auto h = relative_homology(triangle(), triangle_boundary());
  REQUIRE(h.at(2) == HomologyGroup{1, {}});
  REQUIRE(h.support() == std::vector<int>{2});
  // relative to {empty face} gives unreduced homology
  auto two_points = l_complex(2);
  REQUIRE(relative_homology(two_points, SimplicialComplex{}).at(0) == HomologyGroup{2, {}});
  REQUIRE_THROWS_AS(relative_homology(triangle_boundary(), triangle()), InputError);
}

TEST_CASE("homology is invariant under relabelling", "[homology][property]") {
  std::mt19937 rng(99);
  std::vector<SimplicialComplex> ks{build_delta(complete_double_graph(3)), build_delta(double_cycle_graph(4)),
                                    c_complex(9), l_complex(8)};
  for (const auto& k : ks) {
    const auto base = reduced_homology(k);
    for (int trial = 0; trial < 10; ++trial) {
      auto perm = oracle::random_permutation(static_cast<std::size_t>(k.n_vertices()), rng);
      REQUIRE(reduced_homology(k.relabel(perm)) == base);
    }
  }
}

TEST_CASE("Betti numbers agree with rank-nullity over Q", "[homology][property]") {
  std::vector<SimplicialComplex> ks{build_delta(complete_double_graph(4)), build_delta(double_cycle_graph(5)),
                                    c_complex(10), l_complex(10), build_delta(string_with_tail(3))};
  for (const auto& k : ks) {
    auto c = chain_complex_of(k);
    auto h = homology(c);
    for (int d = -1; d <= k.dimension(); ++d) {
      const auto rank_out = (d >= 0) ? oracle::rational_rank(dense_rows(c.boundary(d))) : 0;
      const auto rank_in = (d < k.dimension()) ? oracle::rational_rank(dense_rows(c.boundary(d + 1))) : 0;
      const auto betti = static_cast<std::int64_t>(c.rank(d)) - static_cast<std::int64_t>(rank_out) -
                         static_cast<std::int64_t>(rank_in);
      REQUIRE(h.at(d).betti == betti);
    }
  }
}

TEST_CASE("homology of the real projective plane has Z/2", "[homology]") {
  // six-vertex triangulation
  auto rp2 = SimplicialComplex::from_facets(6, {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                                {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}});
  auto h = reduced_homology(rp2);
  REQUIRE(h.at(1) == HomologyGroup{0, {2}});
  REQUIRE(h.at(2).is_zero());
  REQUIRE(h.at(0).is_zero());
}
