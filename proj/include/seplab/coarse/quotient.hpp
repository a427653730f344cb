#pragma once

#include <algorithm>
#include <numeric>
#include <cstdint>
#include <vector>

#include "../graph.hpp"

namespace seplab {

struct SigmaForest {
  Vertex root = 0;
  std::vector<Vertex> parent;
  std::vector<int> depth;

  // sigma_k(v): k parent steps, stopping at the root
  Vertex step(Vertex v, int k) const {
    for (; k > 0 && v != root; --k) v = parent[v];
    return v;
  }
};

// Parent of v is its lowest-id neighbour closer to v0.
inline SigmaForest sigma_geodesics(const Graph& g, Vertex v0) {
  auto d = bfs_distances(g, v0);
  if (std::count(d.begin(), d.end(), kUnreachable)) throw InputError("sigma_geodesics needs a connected graph");
  SigmaForest f;
  f.root = v0;
  f.depth = d;
  f.parent.resize(g.size());
  for (Vertex v = 0; v < g.size(); ++v) {
    f.parent[v] = v;
    if (v == v0) continue;
    for (Vertex u : g.neighbors(v))
      if (d[u] + 1 == d[v]) {
        f.parent[v] = u;
        break;
      }
  }
  return f;
}

struct SphereClasses {
  std::vector<int> class_of;                 // per vertex
  std::vector<std::vector<Vertex>> classes;  // ordered by (level, smallest id)
  std::vector<int> level;                    // per class
  std::vector<int> diameter;                 // per class, in g
};

namespace detail {

// Vertices within a radius of a source, reusing scratch space across calls.
class BallScanner {
 public:
  explicit BallScanner(const Graph& g) : g_(g), stamp_(g.size(), 0) {}

  const std::vector<Vertex>& operator()(Vertex s, int radius) {
    ++round_;
    seen_.assign(1, s);
    dist_.assign(1, 0);
    stamp_[s] = round_;
    for (std::size_t h = 0; h < seen_.size(); ++h) {
      if (dist_[h] == radius) continue;
      for (Vertex y : g_.neighbors(seen_[h]))
        if (stamp_[y] != round_) {
          stamp_[y] = round_;
          seen_.push_back(y);
          dist_.push_back(dist_[h] + 1);
        }
    }
    return seen_;
  }

 private:
  const Graph& g_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t round_ = 0;
  std::vector<Vertex> seen_;
  std::vector<int> dist_;
};

inline int set_diameter(const Graph& g, const std::vector<Vertex>& members) {
  if (members.size() <= 1) return 0;
  int best = 0;
  for (Vertex s : members) {
    auto d = bfs_distances(g, s);
    for (Vertex v : members) best = std::max(best, d[v]);
  }
  return best;
}

struct Dsu {
  std::vector<Vertex> p;
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), Vertex{0}); }
  Vertex find(Vertex x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace detail

// Same-sphere vertices joined when at g-distance <= 2*delta, closed under
// chaining. With `only_levels` > 0 only spheres whose radius is a multiple of
// it are classified (other vertices get class -1).
inline SphereClasses sphere_classes(const Graph& g, Vertex v0, int delta, int only_levels = 0) {
  if (delta < 0) throw InputError("delta must be non-negative");
  auto d = bfs_distances(g, v0);
  if (std::count(d.begin(), d.end(), kUnreachable)) throw InputError("sphere_classes needs a connected graph");
  const std::size_t n = g.size();
  auto wanted = [&](Vertex v) { return only_levels <= 0 || d[v] % only_levels == 0; };
  detail::Dsu dsu(n);
  detail::BallScanner scan(g);
  if (delta > 0)
    for (Vertex v = 0; v < n; ++v) {
      if (!wanted(v)) continue;
      for (Vertex u : scan(v, 2 * delta))
        if (u > v && d[u] == d[v]) dsu.unite(u, v);
    }
  // order classes by (level, smallest id)
  std::vector<Vertex> reps;
  for (Vertex v = 0; v < n; ++v)
    if (wanted(v) && dsu.find(v) == v) reps.push_back(v);
  std::stable_sort(reps.begin(), reps.end(), [&](Vertex a, Vertex b) { return d[a] < d[b]; });
  SphereClasses out;
  out.class_of.assign(n, -1);
  std::vector<int> index(n, -1);
  for (std::size_t i = 0; i < reps.size(); ++i) {
    index[reps[i]] = int(i);
    out.level.push_back(d[reps[i]]);
  }
  out.classes.resize(reps.size());
  for (Vertex v = 0; v < n; ++v) {
    if (!wanted(v)) continue;
    int c = index[dsu.find(v)];
    out.class_of[v] = c;
    out.classes[c].push_back(v);
  }
  for (auto& cls : out.classes) out.diameter.push_back(detail::set_diameter(g, cls));
  return out;
}

struct QuotientTree {
  int delta = 0;
  int level_spacing = 1;
  std::vector<std::vector<Vertex>> classes;  // node id -> host vertices
  std::vector<int> tree_level;               // host level / spacing
  std::vector<int> class_diameters;
  Graph tree;
  GraphMap pi;
  bool is_tree = false;
  bool unique_down = false;    // every non-root class has exactly one neighbour one level down
  bool levels_consistent = false;  // tree distance to the root class equals tree_level
};

// Classes on spheres of radius divisible by 3*delta+1; class U is joined to
// the class containing sigma_{3 delta+1}(v) for each v in U. pi(v) is the
// class of sigma_{d(v) mod (3 delta+1)}(v).
inline QuotientTree quotient_tree(const Graph& g, Vertex v0, int delta) {
  if (delta < 0) throw InputError("delta must be non-negative");
  const int s = 3 * delta + 1;
  auto forest = sigma_geodesics(g, v0);
  auto sc = sphere_classes(g, v0, delta, s);
  QuotientTree q;
  q.delta = delta;
  q.level_spacing = s;
  q.classes = sc.classes;
  q.class_diameters = sc.diameter;
  const std::size_t k = sc.classes.size();
  for (int l : sc.level) q.tree_level.push_back(l / s);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t c = 0; c < k; ++c) {
    if (sc.level[c] == 0) continue;
    for (Vertex v : sc.classes[c]) {
      Vertex u = forest.step(v, s);
      edges.emplace_back(Vertex(sc.class_of[u]), Vertex(c));
    }
  }
  q.tree = Graph::from_edges(k, edges);
  std::vector<Vertex> image(g.size());
  for (Vertex v = 0; v < g.size(); ++v) image[v] = Vertex(sc.class_of[forest.step(v, forest.depth[v] % s)]);
  q.pi = GraphMap(g, q.tree, std::move(image));
  q.is_tree = is_tree(q.tree);
  q.unique_down = true;
  for (Vertex c = 0; c < k; ++c) {
    if (q.tree_level[c] == 0) continue;
    int down = 0;
    for (Vertex u : q.tree.neighbors(c)) down += q.tree_level[u] + 1 == q.tree_level[c];
    if (down != 1) q.unique_down = false;
  }
  auto td = bfs_distances(q.tree, Vertex(sc.class_of[v0]));
  q.levels_consistent = true;
  for (Vertex c = 0; c < k; ++c)
    if (td[c] != q.tree_level[c]) q.levels_consistent = false;
  return q;
}

}  // namespace seplab
