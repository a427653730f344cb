#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace seplab {

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Sorted, duplicate-free list of vertex ids.
class VertexSet {
 public:
  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> ids) : ids_(ids) { normalize(); }
  explicit VertexSet(std::vector<Vertex> ids) : ids_(std::move(ids)) { normalize(); }

  // Same as the vector constructor but also range-checks against n.
  static VertexSet checked(std::vector<Vertex> ids, std::size_t n) {
    VertexSet s(std::move(ids));
    if (!s.ids_.empty() && s.ids_.back() >= n)
      throw InputError("vertex id " + std::to_string(s.ids_.back()) + " out of range (n=" +
                       std::to_string(n) + ")");
    return s;
  }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  Vertex operator[](std::size_t i) const { return ids_[i]; }
  auto begin() const { return ids_.begin(); }
  auto end() const { return ids_.end(); }
  bool contains(Vertex v) const { return std::binary_search(ids_.begin(), ids_.end(), v); }
  const std::vector<Vertex>& ids() const { return ids_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend bool operator<(const VertexSet& a, const VertexSet& b) { return a.ids_ < b.ids_; }

 private:
  void normalize() {
    std::sort(ids_.begin(), ids_.end());
    ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
  }
  std::vector<Vertex> ids_;
};

// Immutable simple undirected graph in CSR form.
class Graph {
 public:
  Graph() : offsets_{0} {}

  static Graph edgeless(std::size_t n) {
    Graph g;
    g.offsets_.assign(n + 1, 0);
    return g;
  }

  // Edges may come in any order and orientation; duplicates collapse.
  static Graph from_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    std::vector<std::pair<Vertex, Vertex>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw InputError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") out of range (n=" + std::to_string(n) + ")");
      if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
      arcs.emplace_back(u, v);
      arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets_[u + 1];
    for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
    g.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) g.targets_.push_back(v);
    return g;
  }

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return targets_.size() / 2; }
  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (Vertex v = 0; v < size(); ++v) d = std::max(d, degree(v));
    return d;
  }
  bool has_edge(Vertex u, Vertex v) const {
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }
  // each edge once, u < v, lexicographic
  std::vector<std::pair<Vertex, Vertex>> edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(num_edges());
    for (Vertex u = 0; u < size(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  bool has_coords() const { return coords_.has_value(); }
  const std::vector<Point>& coords() const { return coords_.value(); }
  void set_coords(std::vector<Point> c) {
    if (c.size() != size()) throw InputError("coordinate count does not match vertex count");
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!(std::hypot(c[i].x, c[i].y) < 1.0))
        throw InputError("coordinate of vertex " + std::to_string(i) + " not inside the unit disk");
    coords_ = std::move(c);
  }

  bool has_labels() const { return labels_.has_value(); }
  const std::vector<std::string>& labels() const { return labels_.value(); }
  void set_labels(std::vector<std::string> l) {
    if (l.size() != size()) throw InputError("label count does not match vertex count");
    labels_ = std::move(l);
  }

  void check_vertex(Vertex v) const {
    if (v >= size())
      throw InputError("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(size()) + ")");
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> targets_;
  std::optional<std::vector<Point>> coords_;
  std::optional<std::vector<std::string>> labels_;
};

// Total vertex map source -> target.
struct GraphMap {
  Graph source;
  Graph target;
  std::vector<Vertex> image;

  GraphMap() = default;
  GraphMap(Graph s, Graph t, std::vector<Vertex> img)
      : source(std::move(s)), target(std::move(t)), image(std::move(img)) {
    if (image.size() != source.size())
      throw InputError("map is not total: " + std::to_string(image.size()) + " images for " +
                       std::to_string(source.size()) + " source vertices");
    for (Vertex y : image)
      if (y >= target.size()) throw InputError("map image " + std::to_string(y) + " not a target vertex");
  }

  static GraphMap identity(const Graph& g) {
    std::vector<Vertex> img(g.size());
    std::iota(img.begin(), img.end(), Vertex{0});
    return GraphMap(g, g, std::move(img));
  }
};

struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_host;  // new id -> host id
};

inline constexpr int kUnreachable = -1;

inline std::vector<int> bfs_distances(const Graph& g, Vertex v0) {
  g.check_vertex(v0);
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<Vertex> queue{v0};
  dist[v0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    Vertex x = queue[head];
    for (Vertex y : g.neighbors(x))
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
  }
  return dist;
}

// removed[v] != 0 marks deleted vertices. Components in canonical order:
// size descending, then smallest id.
inline std::vector<VertexSet> components_masked(const Graph& g, const std::vector<char>& removed) {
  std::vector<char> seen(removed);
  std::vector<VertexSet> out;
  std::vector<Vertex> stack;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x))
        if (!seen[y]) {
          seen[y] = 1;
          comp.push_back(y);
          stack.push_back(y);
        }
    }
    out.emplace_back(std::move(comp));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const VertexSet& a, const VertexSet& b) { return a.size() > b.size(); });
  return out;
}

inline std::vector<char> mask_of(const Graph& g, const VertexSet& s) {
  std::vector<char> m(g.size(), 0);
  for (Vertex v : s) {
    g.check_vertex(v);
    m[v] = 1;
  }
  return m;
}

inline std::vector<VertexSet> components(const Graph& g, const VertexSet& removed = {}) {
  return components_masked(g, mask_of(g, removed));
}

// size of the largest component of g minus the masked vertices
inline std::size_t max_component_masked(const Graph& g, const std::vector<char>& removed) {
  std::vector<char> seen(removed);
  std::vector<Vertex> stack;
  std::size_t best = 0;
  for (Vertex s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::size_t size = 1;
    seen[s] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x))
        if (!seen[y]) {
          seen[y] = 1;
          ++size;
          stack.push_back(y);
        }
    }
    best = std::max(best, size);
  }
  return best;
}

inline bool is_connected(const Graph& g) {
  if (g.size() == 0) return true;
  auto d = bfs_distances(g, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x == kUnreachable; });
}

inline bool is_tree(const Graph& g) {
  return g.size() > 0 && g.num_edges() + 1 == g.size() && is_connected(g);
}

// Induced subgraph on `keep`, ids assigned in the order given (duplicates rejected).
inline Subgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& keep) {
  std::vector<std::int64_t> local(g.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    g.check_vertex(keep[i]);
    if (local[keep[i]] >= 0) throw InputError("duplicate vertex in induced subgraph request");
    local[keep[i]] = std::int64_t(i);
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Vertex y : g.neighbors(keep[i]))
      if (local[y] > std::int64_t(i)) edges.emplace_back(Vertex(i), Vertex(local[y]));
  Subgraph out{Graph::from_edges(keep.size(), edges), keep};
  if (g.has_coords()) {
    std::vector<Point> c;
    for (Vertex v : keep) c.push_back(g.coords()[v]);
    out.graph.set_coords(std::move(c));
  }
  if (g.has_labels()) {
    std::vector<std::string> l;
    for (Vertex v : keep) l.push_back(g.labels()[v]);
    out.graph.set_labels(std::move(l));
  }
  return out;
}

inline Subgraph induced_subgraph(const Graph& g, const VertexSet& keep) {
  return induced_subgraph(g, keep.ids());
}

// Induced ball of radius r; new ids ordered by (distance, host id), so v0 -> 0.
inline Subgraph ball(const Graph& g, Vertex v0, int r) {
  if (r < 0) throw InputError("negative ball radius");
  auto dist = bfs_distances(g, v0);
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < g.size(); ++v)
    if (dist[v] != kUnreachable && dist[v] <= r) keep.push_back(v);
  std::stable_sort(keep.begin(), keep.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  return induced_subgraph(g, keep);
}

// Vertex (u,v) gets id u*|h| + v.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
  if (g.size() == 0 || h.size() == 0) throw InputError("cartesian product with an empty factor");
  const auto nh = Vertex(h.size());
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex u = 0; u < g.size(); ++u)
    for (auto [a, b] : h.edges()) edges.emplace_back(u * nh + a, u * nh + b);
  for (auto [a, b] : g.edges())
    for (Vertex v = 0; v < nh; ++v) edges.emplace_back(a * nh + v, b * nh + v);
  return Graph::from_edges(g.size() * h.size(), edges);
}

inline int eccentricity(const Graph& g, Vertex v) {
  auto d = bfs_distances(g, v);
  if (std::find(d.begin(), d.end(), kUnreachable) != d.end())
    throw InputError("eccentricity of a disconnected graph");
  return *std::max_element(d.begin(), d.end());
}

// Dense all-pairs distance table. T must hold the diameter; unreachable
// pairs are stored as the maximum of T.
template <class T = std::uint16_t>
class DistanceMatrix {
 public:
  static constexpr T kInf = std::numeric_limits<T>::max();

  DistanceMatrix() = default;
  explicit DistanceMatrix(const Graph& g, unsigned threads = 1) : n_(g.size()), d_(n_ * n_, kInf) {
    parallel_for(n_, threads, [&](std::size_t s) {
      T* row = &d_[s * n_];
      std::vector<Vertex> queue{Vertex(s)};
      row[s] = 0;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        Vertex x = queue[head];
        for (Vertex y : g.neighbors(x))
          if (row[y] == kInf) {
            if (row[x] + 1 >= kInf) throw CapacityError("distance exceeds distance-matrix storage");
            row[y] = T(row[x] + 1);
            queue.push_back(y);
          }
      }
    });
  }

  std::size_t size() const { return n_; }
  T operator()(std::size_t a, std::size_t b) const { return d_[a * n_ + b]; }
  const T* row(std::size_t a) const { return &d_[a * n_]; }
  bool connected() const { return std::find(d_.begin(), d_.end(), kInf) == d_.end(); }
  int diameter() const {
    T m = 0;
    for (T x : d_) m = std::max(m, x);
    return int(m);
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> d_;
};

}  // namespace seplab
