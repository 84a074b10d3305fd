#include <catch_amalgamated.hpp>

#include <random>

#include "dforest/quotient.hpp"
#include "oracles.hpp"

using namespace dforest;

namespace {

Homology groups(int min_degree, std::vector<HomologyGroup> g) { return Homology(min_degree, std::move(g)); }

HomologyGroup z(std::int64_t b) { return {b, {}}; }

/// Boundary read with "merge the i-th and (i+1)-st largest labels" and the
/// same signs, for comparison with the library convention.
SparseMatrix largest_merge_boundary(const CellComplex& cx, std::size_t p) {
  SparseMatrix d(cx.cells[p - 1].size(), cx.cells[p].size());
  for (std::size_t j = 0; j < cx.cells[p].size(); ++j) {
    const auto& c = cx.cells[p][j].layout;
    const int top = static_cast<int>(p) + 1;
    SparseMatrix::Column col;
    for (int i = 1; i <= static_cast<int>(p) + 1; ++i) {
      LabelledForest f{c.n_vertices, {}, {}};
      if (i <= static_cast<int>(p)) {
        const int hi = top + 1 - i;  // merge hi-1 and hi
        f = c;
        for (auto& l : f.labels)
          if (l >= hi) --l;
      } else {
        for (std::size_t e = 0; e < c.edges.size(); ++e)
          if (c.labels[e] < top) {
            f.edges.push_back(c.edges[e]);
            f.labels.push_back(c.labels[e]);
          }
      }
      col.push_back({static_cast<int>(cx.index.at(canonical_form(f).code)), (static_cast<int>(p) + i + 1) % 2 == 0 ? 1 : -1});
    }
    d.set_column(j, std::move(col));
  }
  return d;
}

/// Betti number over a field: exact rational elimination for small
/// matrices, a large prime otherwise.
std::int64_t rational_betti(const ChainComplexZ& c, int p) {
  auto rank_of = [](const SparseMatrix& m) {
    if (m.rows() * m.cols() > 40000) {
      std::vector<std::vector<std::pair<int, std::int64_t>>> cols;
      for (std::size_t j = 0; j < m.cols(); ++j) {
        cols.emplace_back();
        for (const auto& e : m.column(j)) cols.back().push_back({e.row, e.value});
      }
      return static_cast<std::int64_t>(oracle::rank_mod_p(cols));
    }
    std::vector<std::vector<boost::multiprecision::cpp_int>> a(m.rows(), std::vector<boost::multiprecision::cpp_int>(m.cols()));
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto& e : m.column(j)) a[static_cast<std::size_t>(e.row)][j] = e.value;
    return static_cast<std::int64_t>(oracle::rational_rank(a));
  };
  return static_cast<std::int64_t>(c.rank(p)) - rank_of(c.boundary(p)) - rank_of(c.boundary(p + 1));
}

bool brute_admissible(const LabelledForest& f) {
  for (const auto& g : oracle::edge_automorphisms(f.n_vertices, f.edges))
    if (permutation_sign(g) < 0) return false;
  return true;
}

}  // namespace

TEST_CASE("small cell counts", "[quotient]") {
  auto x2 = enumerate_cells(2);
  REQUIRE(x2.cells.size() == 1);
  REQUIRE(x2.cells[0].size() == 1);
  auto x3 = enumerate_cells(3);
  REQUIRE(x3.cells[0].size() == 3);
  REQUIRE(x3.cells[1].size() == 3);
  const std::int64_t reduced_euler[] = {-1, 1, -2};
  for (int n = 3; n <= 5; ++n) {
    auto cx = enumerate_cells(n);
    std::int64_t chi = -1;
    for (std::size_t p = 0; p < cx.cells.size(); ++p) chi += (p % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(cx.cells[p].size());
    REQUIRE(chi == reduced_euler[n - 3]);
  }
}

TEST_CASE("cells match labelled forests counted by brute force", "[quotient]") {
  // classes of (forest on 4 labelled vertices, surjective labelling) under isomorphism
  const int n = 4;
  const auto g = complete_double_graph(n);
  std::vector<std::pair<std::vector<Edge>, std::vector<int>>> reps;
  std::vector<std::size_t> by_dim(static_cast<std::size_t>(n - 1), 0);
  for_each_forest_subset(g, std::nullopt, [&](const EdgeSubset& s) {
    if (s.empty()) return true;
    std::vector<Edge> edges;
    for (int e : s) edges.push_back(g.edge(e));
    std::vector<int> labels(s.size(), 1);
    for (;;) {
      const int top = *std::max_element(labels.begin(), labels.end());
      bool onto = true;
      for (int l = 1; l <= top; ++l) onto = onto && std::count(labels.begin(), labels.end(), l) > 0;
      if (onto) {
        bool fresh = true;
        for (const auto& [re, rl] : reps)
          if (oracle::isomorphic(n, edges, labels, re, rl)) {
            fresh = false;
            break;
          }
        if (fresh) {
          reps.push_back({edges, labels});
          ++by_dim[static_cast<std::size_t>(top - 1)];
        }
      }
      std::size_t i = 0;
      while (i < labels.size() && labels[i] == static_cast<int>(labels.size())) labels[i++] = 1;
      if (i == labels.size()) break;
      ++labels[i];
    }
    return true;
  });
  auto cx = enumerate_cells(n);
  for (std::size_t p = 0; p < by_dim.size(); ++p) REQUIRE(cx.cells[p].size() == by_dim[p]);
}

TEST_CASE("boundary of a labelled path", "[quotient]") {
  auto terms = boundary_cell({3, {{0, 1}, {1, 2}}, {1, 2}});
  REQUIRE(terms.size() == 2);
  auto merged = canonical_form({3, {{0, 1}, {1, 2}}, {1, 1}});
  auto edge = canonical_form({3, {{0, 1}}, {1}});
  std::map<std::string, std::int64_t> got;
  for (const auto& t : terms) got[t.face.code] = t.coefficient;
  REQUIRE(got == std::map<std::string, std::int64_t>{{merged.code, -1}, {edge.code, 1}});
  REQUIRE_THROWS_AS(boundary_cell({3, {{0, 1}}, {1}}), InputError);
}

TEST_CASE("boundary of boundary vanishes on X_n", "[quotient][property]") {
  for (int n = 2; n <= 6; ++n) {
    auto cx = enumerate_cells(n);
    auto c = x_chain_complex(cx, true);
    for (int p = 0; p < c.max_degree(); ++p) REQUIRE(product_is_zero(c.boundary(p), c.boundary(p + 1)));
  }
}

TEST_CASE("merging the largest labels instead does not give a complex", "[quotient]") {
  auto cx = enumerate_cells(4);
  auto d1 = largest_merge_boundary(cx, 1);
  auto d2 = largest_merge_boundary(cx, 2);
  REQUIRE_FALSE(product_is_zero(d1, d2));
}

TEST_CASE("boundary commutes with canonical form", "[quotient][property]") {
  std::mt19937 rng(4242);
  auto cx = enumerate_cells(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto p = 1 + rng() % (cx.cells.size() - 1);
    const auto& cell = cx.cells[p][rng() % cx.cells[p].size()].layout;
    const auto perm = oracle::random_permutation(static_cast<std::size_t>(cell.n_vertices), rng);
    LabelledForest moved{cell.n_vertices, {}, {}};
    for (int i : oracle::random_permutation(cell.edges.size(), rng)) {
      const auto& e = cell.edges[static_cast<std::size_t>(i)];
      moved.edges.push_back({perm[static_cast<std::size_t>(e.source)], perm[static_cast<std::size_t>(e.target)]});
      moved.labels.push_back(cell.labels[static_cast<std::size_t>(i)] * 10);
    }
    auto a = boundary_cell(cell), b = boundary_cell(moved);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      REQUIRE(a[i].face.code == b[i].face.code);
      REQUIRE(a[i].coefficient == b[i].coefficient);
    }
  }
}

TEST_CASE("homology of X_n from cells", "[quotient]") {
  REQUIRE(x_homology(2).is_zero());
  REQUIRE(x_homology(3) == groups(1, {z(1)}));
  REQUIRE(x_homology(4) == groups(2, {z(1)}));
  REQUIRE(x_homology(5) == groups(3, {z(2)}));
  REQUIRE(x_homology(6) == groups(3, {HomologyGroup{0, {2}}, z(3)}));
}

TEST_CASE("homology of X_n from the first page agrees", "[quotient]") {
  for (int n = 2; n <= 6; ++n) {
    INFO("n = " << n);
    REQUIRE(e1_homology(n) == x_homology(n));
  }
}

TEST_CASE("first page differential squares to zero", "[quotient][property]") {
  for (int n = 3; n <= 6; ++n) {
    auto page = d1_page(n);
    for (std::size_t k = 3; k < page.d1.size(); ++k) REQUIRE(product_is_zero(page.d1[k - 1], page.d1[k]));
    REQUIRE(page.d1[2].is_zero());
  }
}

TEST_CASE("f table", "[quotient]") {
  auto f = f_table(8);
  const std::vector<std::vector<std::int64_t>> table = {
      {0, 1, 1, 1, 1, 1}, {0, 0, 1, 1, 1, 1}, {0, 0, 0, 2, 3, 3}, {0, 0, 0, 0, 4, 7}, {0, 0, 0, 0, 0, 8}};
  for (int k = 1; k <= 5; ++k)
    for (int n = 1; n <= 6; ++n) REQUIRE(f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] == table[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(n - 1)]);
  for (int n = 1; n <= 8; ++n)
    for (int k = n; k <= 8; ++k) REQUIRE(f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] == 0);
  for (int k = 2; k <= 4; ++k)
    for (int n = 2 * k; n <= 8; ++n) REQUIRE(f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] == f[static_cast<std::size_t>(k)][static_cast<std::size_t>(2 * k - 1)]);
  REQUIRE_THROWS_AS(f_table(9), GuardExceeded);
}

TEST_CASE("f table agrees with brute-force admissibility", "[quotient][property]") {
  auto f = f_table(6);
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::int64_t> count(static_cast<std::size_t>(n), 0);
    for (const auto& t : enumerate_forests(n, 1))
      if (brute_admissible(t.layout)) ++count[t.n_edges()];
    for (int k = 1; k < n; ++k) REQUIRE(f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] == count[static_cast<std::size_t>(k)]);
  }
}

TEST_CASE("alternating f sums give the top rational Betti number", "[quotient]") {
  auto f = f_table(6);
  const std::int64_t expected[] = {1, 1, 2, 3};
  for (int n = 3; n <= 6; ++n) {
    std::int64_t sum = 0;
    for (int k = 2; k <= n - 1; ++k) sum += ((n + k + 1) % 2 == 0 ? 1 : -1) * f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)];
    REQUIRE(sum == expected[n - 3]);
    REQUIRE(rational_betti(x_chain_complex(enumerate_cells(n), true), n - 2) == sum);
  }
}

TEST_CASE("E_T of a single edge", "[quotient]") {
  auto h = e_t_homology({2, {{0, 1}}, {}});
  REQUIRE(h == groups(0, {z(1)}));
  REQUIRE_THROWS_AS(e_t_complex({2, {}, {}}), InputError);
}

TEST_CASE("E_T is rationally concentrated in degree k-1", "[quotient][property]") {
  for (int n = 2; n <= 6; ++n)
    for (const auto& t : enumerate_forests(n, 1)) {
      const int k = static_cast<int>(t.n_edges());
      const auto c = e_t_complex(t.layout);
      const bool admissible = brute_admissible(t.layout);
      for (int p = 0; p < k; ++p) {
        INFO(t.code << " p = " << p);
        REQUIRE(rational_betti(c, p) == ((admissible && p == k - 1) ? 1 : 0));
      }
    }
}

TEST_CASE("the two-path forest has Z/2 in E_T", "[quotient]") {
  const auto t = two_path_forest();
  const auto h = e_t_homology(t);
  REQUIRE(h.at(4) == HomologyGroup{0, {2}});
  for (int p = 1; p <= 5; ++p)
    if (p != 4) REQUIRE(h.at(p).is_zero());
  REQUIRE_FALSE(is_admissible(t));
}

TEST_CASE("first page entries equal sums over forests for n <= 5", "[quotient][property]") {
  for (int n = 2; n <= 5; ++n) {
    E1EntryOracle oracle(n);
    for (int k = 1; k <= n - 1; ++k)
      for (int p = 0; p <= n - 2; ++p) {
        auto [filtered, summed] = oracle.entry(p, k);
        INFO("n = " << n << " p = " << p << " k = " << k);
        REQUIRE(filtered == summed);
      }
  }
  auto [a, b] = e1_entry_oracle(4, 0, 1);
  REQUIRE(a == z(1));
  REQUIRE(b == z(1));
}

TEST_CASE("first page entries equal sums over forests for n = 6", "[quotient][property]") {
  E1EntryOracle oracle(6);
  for (int k = 1; k <= 6; ++k)
    for (int p = 0; p <= 5; ++p) {
      auto [filtered, summed] = oracle.entry(p, k);
      INFO("p = " << p << " k = " << k);
      REQUIRE(filtered == summed);
    }
  REQUIRE(oracle.entry(4, 6).first.is_zero());
}

TEST_CASE("rational first page rank is f on the diagonal", "[quotient][property]") {
  auto f = f_table(6);
  for (int n = 2; n <= 6; ++n) {
    E1EntryOracle oracle(n);
    for (int k = 1; k <= n - 1; ++k)
      for (int p = 0; p <= n - 2; ++p)
        REQUIRE(oracle.filtered(k).at(p).betti == (p == k - 1 ? f[static_cast<std::size_t>(k)][static_cast<std::size_t>(n)] : 0));
  }
}

TEST_CASE("the first page is refused where it leaves the diagonal", "[quotient]") {
  for (int n = 2; n <= 6; ++n) REQUIRE_FALSE(diagonal_hypothesis_violation(n).has_value());
  REQUIRE(diagonal_hypothesis_violation(7).has_value());
  REQUIRE_THROWS_AS(e1_homology(7), DiagonalHypothesisFailed);
}

TEST_CASE("quotient guards", "[quotient]") {
  REQUIRE_THROWS_AS(enumerate_cells(8), GuardExceeded);
  REQUIRE_THROWS_AS(x_homology(1), InputError);
  QuotientLimits tight;
  tight.max_cells = 100;
  REQUIRE_THROWS_AS(enumerate_cells(5, tight), GuardExceeded);
}

TEST_CASE("dumps", "[quotient]") {
  auto cx = enumerate_cells(3);
  const auto text = dump_cells(cx);
  REQUIRE(std::count(text.begin(), text.end(), '\n') == 6);
  REQUIRE(text.rfind("0 | ", 0) == 0);
  auto page = d1_page(5);
  const auto e1 = dump_e1_page(page);
  std::size_t nonzeros = 0;
  for (const auto& m : page.d1) nonzeros += m.nonzeros();
  REQUIRE(static_cast<std::size_t>(std::count(e1.begin(), e1.end(), '\n')) == nonzeros);
}

TEST_CASE("threads do not change results", "[quotient]") {
  QuotientLimits par;
  par.threads = 4;
  REQUIRE(dump_cells(enumerate_cells(5, par)) == dump_cells(enumerate_cells(5)));
  REQUIRE(x_homology(5, par) == x_homology(5));
  REQUIRE(dump_e1_page(d1_page(6, par)) == dump_e1_page(d1_page(6)));
}
