#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "seplab/coarse/levelsets.hpp"

using namespace seplab;

namespace {

std::vector<std::int64_t> tabulate(std::size_t n, const std::function<std::int64_t(std::int64_t, std::int64_t)>& g) {
  std::vector<std::int64_t> v(n * n);
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t x = 0; x < n; ++x) v[x + n * y] = g(std::int64_t(x), std::int64_t(y));
  return v;
}

// Components checked from scratch: each is X-connected, single-level, and no
// X-neighbour outside it shares its level.
void expect_maximal_components(std::size_t n, const std::vector<std::int64_t>& g, std::int64_t k,
                               const LevelSetReport& r) {
  auto level = [&](std::size_t c) {
    auto q = g[c] / k;
    return (g[c] % k != 0 && g[c] < 0) ? q - 1 : q;
  };
  std::size_t total = 0;
  for (std::size_t i = 0; i < r.components.size(); ++i) {
    auto& comp = r.components[i];
    total += comp.cells.size();
    std::vector<char> in(n * n, 0);
    for (Vertex c : comp.cells) {
      in[c] = 1;
      EXPECT_EQ(level(c), comp.level);
      EXPECT_EQ(r.component_of[c], int(i));
    }
    std::vector<Vertex> stack{comp.cells[0]};
    std::vector<char> seen(n * n, 0);
    seen[stack[0]] = 1;
    std::size_t reached = 0;
    while (!stack.empty()) {
      Vertex c = stack.back();
      stack.pop_back();
      ++reached;
      int x = int(c % n), y = int(c / n);
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx) {
          int u = x + dx, v = y + dy;
          if ((!dx && !dy) || u < 0 || v < 0 || u >= int(n) || v >= int(n)) continue;
          Vertex w = Vertex(u + int(n) * v);
          if (!in[w]) EXPECT_NE(level(w), comp.level);
          else if (!seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
    }
    EXPECT_EQ(reached, comp.cells.size());
  }
  EXPECT_EQ(total, n * n);
}

}  // namespace

TEST(LevelSets, VerticalStrips) {
  auto g = tabulate(32, [](auto x, auto) { return x; });
  auto r = quasi_level_components(32, g, 4);
  ASSERT_EQ(r.components.size(), 8u);
  for (auto& c : r.components) EXPECT_EQ(c.cells.size(), 128u);
  EXPECT_TRUE(r.levels_separated);
  expect_maximal_components(32, g, 4, r);
}

TEST(LevelSets, ConstantIsOneClass) {
  auto g = tabulate(10, [](auto, auto) { return 0; });
  auto r = quasi_level_components(10, g, 3);
  ASSERT_EQ(r.components.size(), 1u);
  EXPECT_EQ(r.components[0].cells.size(), 100u);
  EXPECT_EQ(r.chain.size(), 1u);
}

TEST(LevelSets, AnnuliChainGrows) {
  auto g = tabulate(31, [](auto x, auto y) { return std::max(std::llabs(x - 15), std::llabs(y - 15)); });
  auto r = quasi_level_components(31, g, 4);
  ASSERT_GE(r.chain_sizes.size(), 3u);
  for (std::size_t i = 1; i < r.chain_sizes.size(); ++i) EXPECT_GT(r.chain_sizes[i], r.chain_sizes[i - 1]);
  EXPECT_EQ(r.stop, ChainStop::boundary);
  expect_maximal_components(31, g, 4, r);
}

TEST(LevelSets, DiagonalBands) {
  auto g = tabulate(32, [](auto x, auto y) { return (x + y) / 2; });
  auto r = quasi_level_components(32, g, 4);
  expect_maximal_components(32, g, 4, r);
  EXPECT_TRUE(r.levels_separated);
  for (std::size_t i = 1; i < r.chain_sizes.size(); ++i) EXPECT_GT(r.chain_sizes[i], r.chain_sizes[i - 1]);
  EXPECT_EQ(r.stop, ChainStop::boundary);
}

TEST(LevelSets, RandomLipschitzFunctions) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 12;
    // a random walk along a snake order is 1-Lipschitz only along the walk,
    // so build g as a sum of two 1/2-Lipschitz pieces instead
    std::vector<std::int64_t> row(n), col(n);
    for (std::size_t i = 1; i < n; ++i) {
      row[i] = row[i - 1] + std::int64_t(rng() % 2);
      col[i] = col[i - 1] - std::int64_t(rng() % 2);
    }
    auto g = tabulate(n, [&](auto x, auto y) { return row[x] + col[y]; });
    auto r = quasi_level_components(n, g, 5);
    EXPECT_TRUE(r.levels_separated);
    expect_maximal_components(n, g, 5, r);
  }
}

TEST(LevelSets, InputChecks) {
  auto jump = tabulate(4, [](auto x, auto) { return 2 * x; });
  EXPECT_THROW(quasi_level_components(4, jump, 4), InputError);
  auto ok = tabulate(8, [](auto x, auto) { return x; });
  EXPECT_THROW(quasi_level_components(8, ok, 1), InputError);  // k too small
  EXPECT_THROW(quasi_level_components(8, ok, 0), InputError);
  EXPECT_THROW(quasi_level_components(7, ok, 4), InputError);
}
