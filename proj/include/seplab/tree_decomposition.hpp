#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace seplab {

struct TreeDecomposition {
  Graph tree;
  std::vector<VertexSet> bags;

  int width() const {
    std::size_t w = 0;
    for (auto& b : bags) w = std::max(w, b.size());
    return int(w) - 1;
  }
};

// Empty when td is a tree decomposition of g, otherwise the violated axiom.
inline std::optional<std::string> tree_decomposition_error(const Graph& g, const TreeDecomposition& td) {
  if (td.bags.size() != td.tree.size()) return "bag count differs from tree node count";
  if (!is_tree(td.tree)) return "decomposition tree is not a tree";
  std::vector<std::vector<Vertex>> where(g.size());
  for (Vertex t = 0; t < td.bags.size(); ++t)
    for (Vertex v : td.bags[t]) {
      if (v >= g.size()) return "bag " + std::to_string(t) + " names vertex " + std::to_string(v) + " outside the graph";
      where[v].push_back(t);
    }
  for (Vertex v = 0; v < g.size(); ++v)
    if (where[v].empty()) return "cover: vertex " + std::to_string(v) + " is in no bag";
  for (auto [u, v] : g.edges()) {
    bool found = false;
    for (Vertex t : where[u])
      if (td.bags[t].contains(v)) { found = true; break; }
    if (!found) return "edge: {" + std::to_string(u) + "," + std::to_string(v) + "} lies in no bag";
  }
  std::vector<char> removed(td.tree.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    std::fill(removed.begin(), removed.end(), 1);
    for (Vertex t : where[v]) removed[t] = 0;
    if (components_masked(td.tree, removed).size() != 1)
      return "connectivity: nodes holding vertex " + std::to_string(v) + " are not connected in the tree";
  }
  return std::nullopt;
}

inline void validate_tree_decomposition(const Graph& g, const TreeDecomposition& td) {
  if (auto err = tree_decomposition_error(g, td)) throw InputError("invalid tree decomposition: " + *err);
}

// Fill-in replay of an elimination order; returns the max number of later
// neighbours at elimination time.
inline int elimination_width(const Graph& g, const std::vector<Vertex>& order,
                             std::vector<std::vector<Vertex>>* higher = nullptr) {
  const std::size_t n = g.size();
  if (order.size() != n) throw InputError("elimination order is not a permutation");
  std::vector<std::size_t> pos(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    g.check_vertex(order[i]);
    if (pos[order[i]] != n) throw InputError("elimination order is not a permutation");
    pos[order[i]] = i;
  }
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  if (higher) higher->assign(n, {});
  int width = -1;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = order[i];
    std::vector<Vertex> later;
    for (Vertex w = 0; w < n; ++w)
      if (adj[v][w] && pos[w] > i) later.push_back(w);
    width = std::max(width, int(later.size()));
    for (Vertex a : later)
      for (Vertex b : later)
        if (a != b) adj[a][b] = 1;
    if (higher) (*higher)[v] = later;
  }
  return width;
}

// Standard decomposition from an elimination order: node i has bag
// {order[i]} plus its later neighbours and hangs below the earliest of them.
inline TreeDecomposition tree_decomposition_from_order(const Graph& g, const std::vector<Vertex>& order) {
  std::vector<std::vector<Vertex>> higher;
  elimination_width(g, order, &higher);
  const std::size_t n = g.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  TreeDecomposition td;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> roots;
  for (std::size_t i = 0; i < n; ++i) {
    Vertex v = order[i];
    std::vector<Vertex> bag = higher[v];
    bag.push_back(v);
    td.bags.emplace_back(std::move(bag));
    if (higher[v].empty()) {
      roots.push_back(Vertex(i));
      continue;
    }
    std::size_t parent = n;
    for (Vertex w : higher[v]) parent = std::min(parent, pos[w]);
    edges.emplace_back(Vertex(i), Vertex(parent));
  }
  for (std::size_t i = 1; i < roots.size(); ++i) edges.emplace_back(roots[i - 1], roots[i]);
  td.tree = Graph::from_edges(n, edges);
  return td;
}

}  // namespace seplab
