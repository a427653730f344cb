#include <gtest/gtest.h>

#include <random>

#include "seplab/coarse/hyperbolicity.hpp"
#include "seplab/generators.hpp"

using namespace seplab;

namespace {

std::vector<std::vector<int>> all_distances(const Graph& g) {
  std::vector<std::vector<int>> d;
  for (Vertex v = 0; v < g.size(); ++v) d.push_back(bfs_distances(g, v));
  return d;
}

// Twice the four-point constant over every quadruple.
std::int64_t four_point_oracle(const Graph& g) {
  auto d = all_distances(g);
  const std::size_t n = g.size();
  std::int64_t best = 0;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        for (std::size_t w = 0; w < n; ++w) {
          std::int64_t s[3] = {d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]};
          std::sort(s, s + 3);
          best = std::max(best, s[2] - s[1]);
        }
  return best;
}

void geodesics(const Graph& g, const std::vector<std::vector<int>>& d, Vertex a, Vertex b, std::vector<Vertex>& path,
               std::vector<std::vector<Vertex>>& out) {
  if (path.back() == b) {
    out.push_back(path);
    return;
  }
  for (Vertex y : g.neighbors(path.back()))
    if (d[a][y] == d[a][path.back()] + 1 && d[y][b] + d[a][y] == d[a][b]) {
      path.push_back(y);
      geodesics(g, d, a, b, path, out);
      path.pop_back();
    }
}

// Every geodesic triangle, every vertex on every side.
std::int64_t thin_oracle(const Graph& g) {
  auto d = all_distances(g);
  const std::size_t n = g.size();
  std::vector<std::vector<std::vector<std::vector<Vertex>>>> geo(n, std::vector<std::vector<std::vector<Vertex>>>(n));
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      std::vector<Vertex> path{a};
      geodesics(g, d, a, b, path, geo[a][b]);
    }
  auto dist_to = [&](Vertex p, const std::vector<Vertex>& path) {
    int m = 1 << 20;
    for (Vertex q : path) m = std::min(m, d[p][q]);
    return m;
  };
  std::int64_t best = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v)
      for (Vertex w = 0; w < n; ++w)
        for (auto& s1 : geo[u][v])
          for (Vertex p : s1) {
            int far_vw = 0, far_wu = 0;
            for (auto& s2 : geo[v][w]) far_vw = std::max(far_vw, dist_to(p, s2));
            for (auto& s3 : geo[w][u]) far_wu = std::max(far_wu, dist_to(p, s3));
            best = std::max<std::int64_t>(best, std::min(far_vw, far_wu));
          }
  return best;
}

Graph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, Vertex((i + 1) % n));
  return Graph::from_edges(n, e);
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

}  // namespace

TEST(Hyperbolicity, TreesAreZeroBothWays) {
  for (auto g : {binary_tree(4), comb(4, 4), grid({7})}) {
    EXPECT_EQ(hyperbolicity_delta(g, DeltaMethod::four_point), Rational(0, 1));
    EXPECT_EQ(hyperbolicity_delta(g, DeltaMethod::thin_triangles), Rational(0, 1));
  }
}

TEST(Hyperbolicity, CycleAndGrid) {
  EXPECT_EQ(hyperbolicity_delta(cycle(6)), Rational(1, 1));
  EXPECT_GT(hyperbolicity_delta(cycle(6), DeltaMethod::thin_triangles).value(), 0.0);
  auto g = grid({4, 4});
  EXPECT_EQ(hyperbolicity_delta(g).num() * 2 / hyperbolicity_delta(g).den(), four_point_oracle(g));
}

TEST(Hyperbolicity, FourPointMatchesQuadrupleOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = random_connected(4 + trial % 11, 0.2 + 0.05 * (trial % 5), rng);
    auto r = hyperbolicity_delta(g);
    EXPECT_EQ(Rational(four_point_oracle(g), 2), r) << trial;
  }
  for (std::uint32_t k = 2; k <= 5; ++k) {
    auto g = grid({k, k + 1});
    EXPECT_EQ(Rational(four_point_oracle(g), 2), hyperbolicity_delta(g)) << k;
  }
  auto s = sierpinski(3);
  EXPECT_EQ(Rational(four_point_oracle(s), 2), hyperbolicity_delta(s));
}

TEST(Hyperbolicity, ThinTrianglesMatchesGeodesicEnumeration) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_connected(4 + trial % 5, 0.35, rng);
    EXPECT_EQ(hyperbolicity_delta(g, DeltaMethod::thin_triangles), Rational(thin_oracle(g), 1)) << trial;
  }
  for (auto g : {cycle(6), cycle(7), grid({3, 3}), sierpinski(2)})
    EXPECT_EQ(hyperbolicity_delta(g, DeltaMethod::thin_triangles), Rational(thin_oracle(g), 1));
}

TEST(Hyperbolicity, Limits) {
  EXPECT_THROW(hyperbolicity_delta(grid({8, 8}), DeltaMethod::thin_triangles), CapacityError);
  EXPECT_THROW(hyperbolicity_delta(Graph::edgeless(3)), InputError);
}

TEST(Hyperbolicity, TilingBallsHaveSmallDelta) {
  for (int r = 2; r <= 4; ++r) {
    auto d = hyperbolicity_delta(hyperbolic_tiling_ball(4, 5, r));
    EXPECT_LE(d.value(), 2.0) << r;
  }
}
