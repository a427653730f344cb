#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "seplab/generators.hpp"
#include "seplab/separator.hpp"
#include "seplab/tree_decomposition.hpp"

using namespace seplab;

namespace {

// Largest component after deleting `gone` (bitmask), by union-find.
std::size_t largest_after(const Graph& g, std::uint32_t gone) {
  std::vector<int> p(g.size());
  std::iota(p.begin(), p.end(), 0);
  auto find = [&](int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  };
  for (auto [u, v] : g.edges())
    if (!(gone >> u & 1) && !(gone >> v & 1)) p[find(int(u))] = find(int(v));
  std::vector<std::size_t> count(g.size(), 0);
  std::size_t best = 0;
  for (Vertex v = 0; v < g.size(); ++v)
    if (!(gone >> v & 1)) best = std::max(best, ++count[find(int(v))]);
  return best;
}

// Smallest strictly c-balanced set, lexicographically first among those.
std::vector<Vertex> brute_force_cut(const Graph& g, std::int64_t p, std::int64_t q) {
  const std::size_t n = g.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Vertex> comb(k);
    std::iota(comb.begin(), comb.end(), Vertex{0});
    for (;;) {
      std::uint32_t mask = 0;
      for (Vertex v : comb) mask |= 1u << v;
      if (std::int64_t(largest_after(g, mask)) * q < p * std::int64_t(n)) return comb;
      int i = int(k) - 1;
      while (i >= 0 && comb[i] == n - k + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return {};
}

// Treewidth as the best elimination order over all permutations.
int brute_force_treewidth(const Graph& g) {
  const std::size_t n = g.size();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  int best = int(n);
  do {
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
    std::vector<char> gone(n, 0);
    int width = 0;
    for (Vertex v : order) {
      std::vector<Vertex> nb;
      for (Vertex u = 0; u < n; ++u)
        if (!gone[u] && adj[v][u]) nb.push_back(u);
      width = std::max(width, int(nb.size()));
      for (Vertex a : nb)
        for (Vertex b : nb)
          if (a != b) adj[a][b] = 1;
      gone[v] = 1;
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  for (;;) {
    std::bernoulli_distribution coin(p);
    std::vector<std::pair<Vertex, Vertex>> e;
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v)
        if (coin(rng)) e.emplace_back(u, v);
    auto g = Graph::from_edges(n, e);
    if (is_connected(g)) return g;
  }
}

Graph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, Vertex((i + 1) % n));
  return Graph::from_edges(n, e);
}

Graph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

}  // namespace

TEST(Balance, ExactComparisons) {
  Balance half(kHalf);
  EXPECT_TRUE(half.fits(2, 5));
  EXPECT_FALSE(half.fits(2, 4));
  EXPECT_TRUE(half.fits(2, 4, Bound::inclusive));
  auto s = Balance::sqrt_of({7, 8});
  // sqrt(7/8) = 0.935...
  EXPECT_TRUE(s.fits(93, 100));
  EXPECT_FALSE(s.fits(94, 100));
  EXPECT_NEAR(s.value(), std::sqrt(7.0 / 8.0), 1e-15);
  EXPECT_EQ(half.max_fitting(9), 4u);
  EXPECT_THROW(Balance(Rational(1, 1)).validate(), InputError);
  EXPECT_THROW(Balance(Rational(0, 3)).validate(), InputError);
}

TEST(IsBalanced, SpecExamples) {
  auto g = grid({3, 3});
  auto r = is_balanced_separator(g, VertexSet{1, 4, 7}, kHalf);
  EXPECT_TRUE(r.valid);
  EXPECT_EQ(r.max_component, 3u);
  EXPECT_FALSE(is_balanced_separator(complete(4), VertexSet{0, 1}, kHalf).valid);
  auto one = Graph::edgeless(1);
  EXPECT_FALSE(is_balanced_separator(one, VertexSet{}, kHalf).valid);
  EXPECT_TRUE(is_balanced_separator(one, VertexSet{0}, kHalf).valid);
  EXPECT_THROW(is_balanced_separator(g, VertexSet{}, Rational(3, 2)), InputError);
}

TEST(MinSeparator, SmallExamples) {
  auto p5 = grid({5});
  auto s = min_balanced_separator(p5, kHalf);
  EXPECT_EQ(s.vertices, VertexSet({2}));
  EXPECT_TRUE(s.certified_optimal);
  EXPECT_EQ(min_balanced_separator(complete(4), kHalf).size(), 3u);
  EXPECT_EQ(min_balanced_separator(cycle(6), kHalf).size(), 2u);
  EXPECT_EQ(min_balanced_separator(grid({3, 3}), kHalf).size(), 3u);
  EXPECT_LE(min_balanced_separator(sierpinski(3), kHalf).size(), 3u);
  EXPECT_THROW(min_balanced_separator(Graph::edgeless(2), kHalf), InputError);
}

TEST(MinSeparator, MatchesBruteForceIncludingTieBreak) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 120; ++trial) {
    auto g = random_connected(4 + trial % 8, 0.35, rng);
    for (auto [p, q] : {std::pair{1, 2}, {2, 3}, {1, 3}}) {
      auto want = brute_force_cut(g, p, q);
      auto got = min_balanced_separator(g, Rational(p, q));
      EXPECT_EQ(got.vertices.ids(), want) << "trial " << trial << " c=" << p << "/" << q;
      EXPECT_EQ(got.max_component, largest_after(g, [&] {
                  std::uint32_t m = 0;
                  for (Vertex v : got.vertices) m |= 1u << v;
                  return m;
                }()));
    }
  }
}

TEST(MinSeparator, BranchAndBoundAgreesWithExhaustive) {
  std::mt19937_64 rng(99);
  SolverOptions ex{SolverMethod::exhaustive, std::nullopt, 1};
  SolverOptions bb{SolverMethod::branch_and_bound, std::nullopt, 1};
  for (int trial = 0; trial < 150; ++trial) {
    auto g = random_connected(5 + trial % 10, 0.3, rng);
    auto a = min_balanced_separator(g, kHalf, ex);
    auto b = min_balanced_separator(g, kHalf, bb);
    EXPECT_EQ(a.vertices, b.vertices) << trial;
    EXPECT_TRUE(b.certified_optimal);
    EXPECT_EQ(b.method, Method::branch_and_bound);
  }
}

TEST(MinSeparator, IndependentOfThreadCount) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_connected(14, 0.25, rng);
    SolverOptions one{SolverMethod::branch_and_bound, std::nullopt, 1};
    SolverOptions four{SolverMethod::branch_and_bound, std::nullopt, 4};
    EXPECT_EQ(min_balanced_separator(g, kHalf, one).vertices, min_balanced_separator(g, kHalf, four).vertices);
  }
}

TEST(MinSeparator, GridCutsAreTheSide) {
  for (std::uint32_t k = 2; k <= 5; ++k) EXPECT_EQ(min_balanced_separator(grid({k, k}), kHalf).size(), k) << k;
}

TEST(MinSeparator, BudgetGivesUncertifiedValidResult) {
  auto g = grid({5, 5});
  SolverOptions o;
  o.method = SolverMethod::branch_and_bound;
  o.budget = 5;
  auto s = min_balanced_separator(g, kHalf, o);
  EXPECT_FALSE(s.certified_optimal);
  EXPECT_TRUE(is_balanced_separator(g, s.vertices, kHalf).valid);
}

TEST(RefineToC, HalfDelegates) {
  auto g = grid({3, 4});
  EXPECT_EQ(refine_to_c(g, kHalf).vertices, min_balanced_separator(g, kHalf).vertices);
}

TEST(RefineToC, ValidAndWithinFactorFour) {
  std::mt19937_64 rng(17);
  std::vector<Graph> corpus{grid({8}), complete(4), grid({3, 3}), grid({4, 4}), binary_tree(3)};
  for (int i = 0; i < 20; ++i) corpus.push_back(random_connected(6 + i % 6, 0.3, rng));
  for (auto& g : corpus)
    for (auto c : {Rational(1, 4), Rational(1, 3)}) {
      auto r = refine_to_c(g, c);
      EXPECT_TRUE(is_balanced_separator(g, r.vertices, c).valid);
      EXPECT_EQ(r.method, Method::iterated);
      auto exact = min_balanced_separator(g, c);
      EXPECT_GE(r.size(), exact.size());
      EXPECT_LE(r.size(), 4 * std::max<std::size_t>(exact.size(), 1));
    }
}

TEST(RefineToC, SpecPathAndClique) {
  // strict balance at 1/4 on P8 leaves components of size < 2, so the
  // optimum is 4; {2,5} is only balanced with the inclusive bound
  auto r = refine_to_c(grid({8}), Rational(1, 4));
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(min_balanced_separator(grid({8}), Rational(1, 4)).size(), 4u);
  EXPECT_TRUE(check_balance(grid({8}), VertexSet{2, 5}, Rational(1, 4), Bound::inclusive).valid);
  EXPECT_FALSE(check_balance(grid({8}), VertexSet{2, 5}, Rational(1, 4)).valid);
  EXPECT_EQ(refine_to_c(complete(4), Rational(1, 4)).size(), 4u);  // strict: components must be empty
}

TEST(Treewidth, KnownValues) {
  EXPECT_EQ(treewidth_exact(complete(4)).width, 3);
  EXPECT_EQ(treewidth_exact(cycle(6)).width, 2);
  EXPECT_EQ(treewidth_exact(grid({3, 3})).width, 3);
  EXPECT_EQ(treewidth_exact(binary_tree(3)).width, 1);
  EXPECT_THROW(treewidth_exact(grid({19})), CapacityError);
}

TEST(Treewidth, MatchesPermutationOracleAndReplays) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_connected(3 + trial % 5, 0.4, rng);
    auto r = treewidth_exact(g);
    EXPECT_EQ(r.width, brute_force_treewidth(g)) << trial;
    EXPECT_EQ(elimination_width(g, r.elimination_order), r.width);
    auto td = tree_decomposition_from_order(g, r.elimination_order);
    EXPECT_FALSE(tree_decomposition_error(g, td).has_value());
    EXPECT_EQ(td.width(), r.width);
  }
}

TEST(Treewidth, CutAtMostTreewidthPlusOne) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_connected(4 + trial % 9, 0.3, rng);
    EXPECT_LE(int(min_balanced_separator(g, kHalf).size()), treewidth_exact(g).width + 1);
  }
}

TEST(ProductBound, GridFromPaths) {
  auto r = product_bound_report(grid({4}), grid({4}));
  EXPECT_EQ(r.cut_product.size(), 4u);
  EXPECT_EQ(r.cut_c_g.size(), 1u);
  EXPECT_EQ(std::min(r.lhs_g, r.lhs_h), 4u);
  EXPECT_TRUE(r.upper_holds);
  EXPECT_TRUE(r.certified);
}

TEST(ProductBound, TrivialFactor) {
  auto h = cycle(6);
  auto r = product_bound_report(Graph::edgeless(1), h);
  EXPECT_EQ(r.cut_product.size(), min_balanced_separator(h, kHalf).size());
}
