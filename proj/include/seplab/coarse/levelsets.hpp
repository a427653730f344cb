#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "../graph.hpp"

namespace seplab {

struct LevelComponent {
  std::int64_t level = 0;     // a(z) = floor(g(z)/k)
  std::vector<Vertex> cells;  // ids x + n*y, ascending
  bool touches_boundary = false;
};

enum class ChainStop { boundary, full_level, no_surrounding_neighbor };

inline std::string to_string(ChainStop s) {
  switch (s) {
    case ChainStop::boundary: return "boundary";
    case ChainStop::full_level: return "full_level";
    case ChainStop::no_surrounding_neighbor: return "no_surrounding_neighbor";
  }
  return "?";
}

struct LevelSetReport {
  std::size_t n = 0;
  std::int64_t k = 1;
  std::vector<LevelComponent> components;  // ordered by (level, smallest cell)
  std::vector<int> component_of;           // per cell
  std::vector<std::size_t> chain;          // component indices S0, S1, ...
  std::vector<std::size_t> chain_sizes;
  ChainStop stop = ChainStop::boundary;
  bool levels_separated = true;  // no X-adjacent cells with |a - a'| >= 2
};

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

// Quasi-level sets of g on the n x n box: cells grouped by a = floor(g/k),
// split into components of X (the box with diagonals). From the component
// holding `start` (default: the centre cell) the chain moves to an X-adjacent
// component that surrounds the current one, i.e. the current one sits in a
// 4-connected region of the complement that stays off the box boundary.
inline LevelSetReport quasi_level_components(std::size_t n, const std::vector<std::int64_t>& g_values, std::int64_t k,
                                             std::int64_t start = -1) {
  if (n == 0) throw InputError("box side must be positive");
  if (k < 1) throw InputError("k must be at least 1");
  if (g_values.size() != n * n) throw InputError("expected n*n values of g");
  const auto N = std::int64_t(n);
  auto id = [&](std::int64_t x, std::int64_t y) { return std::size_t(x + N * y); };
  for (std::int64_t y = 0; y < N; ++y)
    for (std::int64_t x = 0; x < N; ++x) {
      if (x + 1 < N && std::llabs(g_values[id(x, y)] - g_values[id(x + 1, y)]) > 1)
        throw InputError("g is not 1-Lipschitz at (" + std::to_string(x) + "," + std::to_string(y) + ")");
      if (y + 1 < N && std::llabs(g_values[id(x, y)] - g_values[id(x, y + 1)]) > 1)
        throw InputError("g is not 1-Lipschitz at (" + std::to_string(x) + "," + std::to_string(y) + ")");
    }
  LevelSetReport rep;
  rep.n = n;
  rep.k = k;
  std::vector<std::int64_t> a(n * n);
  for (std::size_t i = 0; i < n * n; ++i) a[i] = detail::floor_div(g_values[i], k);
  // cells at l1 distance <= 2 must have |a - a'| < 2
  for (std::int64_t y = 0; y < N; ++y)
    for (std::int64_t x = 0; x < N; ++x)
      for (std::int64_t dy = -2; dy <= 2; ++dy)
        for (std::int64_t dx = -2; dx <= 2; ++dx) {
          if (std::llabs(dx) + std::llabs(dy) > 2) continue;
          std::int64_t u = x + dx, v = y + dy;
          if (u < 0 || v < 0 || u >= N || v >= N) continue;
          if (std::llabs(a[id(x, y)] - a[id(u, v)]) >= 2)
            throw InputError("k too small: levels jump by 2 within distance 2 at (" + std::to_string(x) + "," +
                             std::to_string(y) + ")");
        }
  auto x_neighbors = [&](std::size_t c, auto&& fn) {
    std::int64_t x = std::int64_t(c) % N, y = std::int64_t(c) / N;
    for (std::int64_t dy = -1; dy <= 1; ++dy)
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        if (!dx && !dy) continue;
        std::int64_t u = x + dx, v = y + dy;
        if (u >= 0 && v >= 0 && u < N && v < N) fn(id(u, v));
      }
  };
  rep.component_of.assign(n * n, -1);
  for (std::size_t c = 0; c < n * n; ++c) {
    if (rep.component_of[c] >= 0) continue;
    LevelComponent comp;
    comp.level = a[c];
    std::vector<std::size_t> stack{c};
    rep.component_of[c] = int(rep.components.size());
    while (!stack.empty()) {
      auto z = stack.back();
      stack.pop_back();
      comp.cells.push_back(Vertex(z));
      x_neighbors(z, [&](std::size_t w) {
        if (std::llabs(a[w] - a[z]) >= 2) rep.levels_separated = false;
        if (rep.component_of[w] < 0 && a[w] == a[z]) {
          rep.component_of[w] = int(rep.components.size());
          stack.push_back(w);
        }
      });
    }
    std::sort(comp.cells.begin(), comp.cells.end());
    for (Vertex z : comp.cells) {
      std::int64_t x = z % N, y = z / N;
      if (x == 0 || y == 0 || x == N - 1 || y == N - 1) comp.touches_boundary = true;
    }
    rep.components.push_back(std::move(comp));
  }
  // canonical order by (level, smallest cell)
  std::vector<std::size_t> order(rep.components.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    return rep.components[p].level < rep.components[q].level;
  });
  std::vector<LevelComponent> sorted;
  std::vector<int> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = int(i);
    sorted.push_back(std::move(rep.components[order[i]]));
  }
  rep.components = std::move(sorted);
  for (auto& c : rep.component_of) c = rank[c];

  // does component `outer` surround component `inner`?
  auto surrounds = [&](std::size_t outer, std::size_t inner) {
    std::vector<char> seen(n * n, 0);
    for (Vertex z : rep.components[outer].cells) seen[z] = 1;
    std::vector<std::size_t> stack{rep.components[inner].cells.front()};
    seen[stack[0]] = 1;
    while (!stack.empty()) {
      auto z = stack.back();
      stack.pop_back();
      std::int64_t x = std::int64_t(z) % N, y = std::int64_t(z) / N;
      if (x == 0 || y == 0 || x == N - 1 || y == N - 1) return false;
      const std::int64_t step[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (auto& s : step) {
        auto w = id(x + s[0], y + s[1]);
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
    }
    return true;
  };

  if (start >= std::int64_t(n * n)) throw InputError("start cell out of range");
  std::size_t cur = rep.component_of[start >= 0 ? std::size_t(start) : id(N / 2, N / 2)];
  for (;;) {
    rep.chain.push_back(cur);
    rep.chain_sizes.push_back(rep.components[cur].cells.size());
    const auto level = rep.components[cur].level;
    std::size_t same_level = 0;
    for (std::size_t i = 0; i < n * n; ++i) same_level += a[i] == level;
    if (rep.components[cur].touches_boundary) { rep.stop = ChainStop::boundary; break; }
    if (same_level == n * n) { rep.stop = ChainStop::full_level; break; }
    std::vector<std::size_t> adjacent;
    for (Vertex z : rep.components[cur].cells)
      x_neighbors(z, [&](std::size_t w) {
        auto c = std::size_t(rep.component_of[w]);
        if (c != cur) adjacent.push_back(c);
      });
    std::sort(adjacent.begin(), adjacent.end());
    adjacent.erase(std::unique(adjacent.begin(), adjacent.end()), adjacent.end());
    bool moved = false;
    for (auto c : adjacent)
      if (surrounds(c, cur)) {
        cur = c;
        moved = true;
        break;
      }
    if (!moved) { rep.stop = ChainStop::no_surrounding_neighbor; break; }
  }
  return rep;
}

}  // namespace seplab
