#include <gtest/gtest.h>

#include <cmath>

#include "seplab/constructive.hpp"

using namespace seplab;

namespace {

TreeDecomposition path_decomposition(std::size_t n) {
  TreeDecomposition td;
  td.tree = grid({std::uint32_t(n - 1)});
  for (Vertex i = 0; i + 1 < n; ++i) td.bags.push_back(VertexSet{i, i + 1});
  return td;
}

}  // namespace

TEST(TTree, SingleVertexAndSmallBall) {
  auto one = tree_product_ball(0);
  auto r = ttree_median_separator(one);
  // strict balance needs the lone vertex removed
  EXPECT_EQ(r.separator.size(), 1u);
  EXPECT_TRUE(is_balanced_separator(one, r.separator.vertices, kHalf).valid);
  auto five = tree_product_ball(1);
  auto s = ttree_median_separator(five);
  EXPECT_TRUE(is_balanced_separator(five, s.separator.vertices, kHalf).valid);
  EXPECT_EQ(s.separator.method, Method::constructive);
}

TEST(TTree, SizeBoundOnBalls) {
  for (int k = 4; k <= 9; ++k) {
    auto g = tree_product_ball(k);
    auto r = ttree_median_separator(g, 1.0);
    const double n = double(g.size());
    auto check = is_balanced_separator(g, r.separator.vertices, kHalf);
    EXPECT_TRUE(check.valid) << k;
    EXPECT_EQ(check.max_component, r.separator.max_component);
    EXPECT_LE(double(r.separator.size()), 4.0 * n / std::log2(n)) << k;
    if (k >= 6) EXPECT_FALSE(r.fallback) << k;
  }
}

TEST(TTree, NeedsLabels) {
  EXPECT_THROW(ttree_median_separator(grid({3})), InputError);
  EXPECT_THROW(ttree_median_separator(tree_product_ball(2), 0.0), InputError);
}

TEST(TTree, InducedSubgraphsKeepLabels) {
  auto g = tree_product_ball(5);
  auto sub = ball(g, 0, 3).graph;
  auto r = ttree_median_separator(sub);
  EXPECT_TRUE(is_balanced_separator(sub, r.separator.vertices, kHalf).valid);
}

TEST(Hyperplane, GridMiddleColumn) {
  auto g = grid({5, 5});
  auto s = hyperplane_separator(g, GridShape{{5, 5}});
  EXPECT_EQ(s.size(), 5u);
  EXPECT_EQ(s.max_component, 10u);
  for (std::uint32_t k = 2; k <= 9; ++k) {
    auto gk = grid({k, k});
    auto sk = hyperplane_separator(gk, GridShape{{k, k}});
    EXPECT_EQ(sk.size(), k);
    EXPECT_TRUE(check_balance(gk, sk.vertices, Rational(2, 3)).valid);
  }
  EXPECT_THROW(hyperplane_separator(g, GridShape{{4, 5}}), InputError);
}

TEST(Hyperplane, SingleVertex) {
  auto g = grid({1});
  EXPECT_EQ(hyperplane_separator(g, GridShape{{1}}).size(), 1u);
}

TEST(Hyperplane, TilingBallsAreBalancedAndSeedDeterministic) {
  std::vector<double> ratio;
  for (int r = 3; r <= 5; ++r) {
    auto g = hyperbolic_tiling_ball(4, 5, r);
    auto res = hyperplane_separator(g, 64, 7, 2);
    EXPECT_TRUE(check_balance(g, res.separator.vertices, Rational(2, 3)).valid);
    ratio.push_back(double(res.separator.size()) / r);
    auto again = hyperplane_separator(g, 64, 7, 1);
    EXPECT_EQ(again.separator.vertices, res.separator.vertices);
    EXPECT_EQ(again.trial, res.trial);
  }
  auto [lo, hi] = std::minmax_element(ratio.begin(), ratio.end());
  EXPECT_LE(*hi / *lo, 3.0);
}

TEST(Hyperplane, NeedsGeometry) {
  EXPECT_THROW(hyperplane_separator(grid({3, 3}), 8, 1), InputError);
  EXPECT_THROW(hyperplane_separator(hyperbolic_tiling_ball(4, 5, 2), 0, 1), InputError);
}

TEST(Bag, PathDecomposition) {
  auto g = grid({5});
  auto s = bag_separator(g, path_decomposition(5));
  EXPECT_EQ(s.size(), 2u);
  EXPECT_TRUE(check_balance(g, s.vertices, kHalf, Bound::inclusive).valid);
}

TEST(Bag, StarContainsCentre) {
  std::vector<std::pair<Vertex, Vertex>> e;
  TreeDecomposition td;
  std::vector<std::pair<Vertex, Vertex>> te;
  for (Vertex leaf = 1; leaf <= 6; ++leaf) {
    e.emplace_back(0, leaf);
    td.bags.push_back(VertexSet{0, leaf});
    if (leaf > 1) te.emplace_back(0, leaf - 1);
  }
  td.tree = Graph::from_edges(6, te);
  auto g = Graph::from_edges(7, e);
  auto s = bag_separator(g, td);
  EXPECT_TRUE(s.vertices.contains(0));
  EXPECT_EQ(s.max_component, 1u);
}

TEST(Bag, SingleBagClique) {
  std::vector<std::pair<Vertex, Vertex>> e{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  auto g = Graph::from_edges(4, e);
  TreeDecomposition td{Graph::edgeless(1), {VertexSet{0, 1, 2, 3}}};
  auto s = bag_separator(g, td);
  EXPECT_EQ(s.size(), 4u);
  EXPECT_EQ(s.max_component, 0u);
}

TEST(Bag, RejectsInvalidDecomposition) {
  auto g = grid({4});
  TreeDecomposition missing_edge{grid({2}), {VertexSet{0, 1}, VertexSet{2, 3}}};
  EXPECT_THROW(bag_separator(g, missing_edge), InputError);
  auto err = tree_decomposition_error(g, missing_edge);
  ASSERT_TRUE(err.has_value());
  EXPECT_NE(err->find("edge"), std::string::npos);
  TreeDecomposition broken{grid({3}), {VertexSet{0, 1}, VertexSet{1, 2, 3}, VertexSet{0}}};
  err = tree_decomposition_error(g, broken);
  ASSERT_TRUE(err.has_value());
  EXPECT_NE(err->find("connect"), std::string::npos);
}

TEST(Bag, SizeAtMostWidthPlusOne) {
  for (auto g : {grid({3, 4}), sierpinski(3), binary_tree(3)}) {
    auto tw = treewidth_exact(g);
    auto td = tree_decomposition_from_order(g, tw.elimination_order);
    auto s = bag_separator(g, td);
    EXPECT_LE(int(s.size()), tw.width + 1);
    EXPECT_TRUE(check_balance(g, s.vertices, kHalf, Bound::inclusive).valid);
  }
}
