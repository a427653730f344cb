#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "../graph.hpp"
#include "levelsets.hpp"

namespace seplab {

// color[v] in 0..D; piece[v] names the piece holding v (ids shared by all
// colors, a piece must be single-colored).
struct ColoringScheme {
  int D = 0;
  int s = 1;
  int B = 0;
  std::vector<int> color;
  std::vector<int> piece;
};

struct ColoringReport {
  bool valid = false;
  int worst_diameter = 0;
  int min_distance = -1;  // between same-colored pieces; -1 when no such pair
  std::size_t pieces = 0;
  std::string problem;  // first violation, empty when valid
};

// Exact check: colors in range, pieces single-colored with diameter <= B
// measured in g, distinct same-colored pieces at distance >= s.
inline ColoringReport verify_asdim_coloring(const Graph& g, const ColoringScheme& scheme) {
  const std::size_t n = g.size();
  if (scheme.color.size() != n || scheme.piece.size() != n) throw InputError("coloring scheme does not cover the graph");
  if (scheme.D < 0 || scheme.s < 1 || scheme.B < 0) throw InputError("coloring scheme needs D >= 0, s >= 1, B >= 0");
  ColoringReport rep;
  std::map<int, std::vector<Vertex>> members;
  for (Vertex v = 0; v < n; ++v) {
    if (scheme.color[v] < 0 || scheme.color[v] > scheme.D)
      throw InputError("vertex " + std::to_string(v) + " has color outside 0.." + std::to_string(scheme.D));
    members[scheme.piece[v]].push_back(v);
  }
  rep.pieces = members.size();
  for (auto& [p, vs] : members)
    for (Vertex v : vs)
      if (scheme.color[v] != scheme.color[vs[0]])
        throw InputError("piece " + std::to_string(p) + " mixes colors");
  auto note = [&](std::string what) {
    if (rep.problem.empty()) rep.problem = std::move(what);
  };
  std::vector<int> dist(n);
  std::vector<Vertex> queue;
  for (auto& [p, vs] : members) {
    for (Vertex v : vs) {
      auto d = bfs_distances(g, v);
      for (Vertex u : vs) {
        int du = d[u] == kUnreachable ? -1 : d[u];
        if (du < 0) {
          rep.worst_diameter = std::numeric_limits<int>::max();
          note("piece " + std::to_string(p) + " is not within one component");
          break;
        }
        rep.worst_diameter = std::max(rep.worst_diameter, du);
      }
    }
    // multi-source BFS from the piece to the nearest same-colored other piece
    std::fill(dist.begin(), dist.end(), -1);
    queue.assign(vs.begin(), vs.end());
    for (Vertex v : vs) dist[v] = 0;
    const int c = scheme.color[vs[0]];
    for (std::size_t h = 0; h < queue.size(); ++h) {
      Vertex x = queue[h];
      if (dist[x] > 0 && scheme.color[x] == c && scheme.piece[x] != p) {
        if (rep.min_distance < 0 || dist[x] < rep.min_distance) rep.min_distance = dist[x];
        break;
      }
      for (Vertex y : g.neighbors(x))
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
    }
  }
  if (rep.worst_diameter > scheme.B)
    note("a piece has diameter " + std::to_string(rep.worst_diameter) + " > B = " + std::to_string(scheme.B));
  if (rep.min_distance >= 0 && rep.min_distance < scheme.s)
    note("same-colored pieces at distance " + std::to_string(rep.min_distance) + " < s = " + std::to_string(scheme.s));
  rep.valid = rep.problem.empty();
  return rep;
}

// Three-color brick wall on grid({w, h}): bricks 2s wide and s tall, odd
// rows shifted by s, brick (i, j) colored (i + j mod 2) mod 3. D = 2, B = 3s - 2.
inline ColoringScheme brick_coloring(std::uint32_t w, std::uint32_t h, int s) {
  if (w == 0 || h == 0) throw InputError("brick_coloring needs a nonempty box");
  if (s < 1) throw InputError("s must be at least 1");
  ColoringScheme sc;
  sc.D = 2;
  sc.s = s;
  sc.B = 3 * s - 2;
  const std::int64_t L = 2 * std::int64_t(s);
  std::map<std::pair<std::int64_t, std::int64_t>, int> ids;
  for (std::int64_t y = 0; y < h; ++y)
    for (std::int64_t x = 0; x < w; ++x) {
      std::int64_t j = y / s;
      std::int64_t i = detail::floor_div(x + (j % 2) * s, L);
      auto [it, fresh] = ids.try_emplace({i, j}, int(ids.size()));
      sc.piece.push_back(it->second);
      sc.color.push_back(int(((i + j % 2) % 3 + 3) % 3));
    }
  return sc;
}

}  // namespace seplab
