#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "../graph.hpp"
#include "../separator.hpp"
#include "quotient.hpp"

namespace seplab {

struct DistortionReport {
  double multiplicative = 1.0;  // M
  double additive = 0.0;        // A(M)
  bool contraction = true;      // d_Y(fu,fv) <= d_X(u,v) on every sampled pair
  std::size_t pairs = 0;
  double coverage = 0.0;        // max distance from a target vertex to the image
  double rough_kappa = 1.0;     // least k with d_X/k - k <= d_Y <= k d_X + k and coverage <= k
  double probe = 8.0;
  bool satisfied_at_probe = true;
};

// Pairs compared: all of them when the source has at most `all_pairs_limit`
// vertices, otherwise `samples` pairs drawn with the given seed.
struct PairSampling {
  std::size_t all_pairs_limit = 2000;
  std::size_t samples = 200000;
  std::uint64_t seed = 1;
};

// (M, A) minimising M + A with M^-1 d_X - A <= d_Y <= M d_X + A on the
// compared pairs. M + A(M) is convex in M, so a ternary search suffices.
inline DistortionReport map_distortion(const GraphMap& m, const PairSampling& sampling = {}, double probe = 8.0) {
  const Graph& x = m.source;
  const Graph& y = m.target;
  if (!is_connected(x) || !is_connected(y)) throw InputError("map_distortion needs connected graphs");
  const std::size_t n = x.size();
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (n <= sampling.all_pairs_limit) {
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  } else {
    std::mt19937_64 rng(sampling.seed);
    for (std::size_t i = 0; i < sampling.samples; ++i) {
      Vertex u = Vertex(rng() % n), v = Vertex(rng() % n);
      if (u != v) pairs.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  }
  // distances grouped by first endpoint so each source BFS runs once
  std::vector<std::pair<int, int>> dd;  // (d_X, d_Y)
  dd.reserve(pairs.size());
  std::vector<std::vector<int>> target_rows(y.size());
  auto target_row = [&](Vertex t) -> const std::vector<int>& {
    if (target_rows[t].empty()) target_rows[t] = bfs_distances(y, t);
    return target_rows[t];
  };
  for (std::size_t i = 0; i < pairs.size();) {
    Vertex u = pairs[i].first;
    auto du = bfs_distances(x, u);
    const auto& tu = target_row(m.image[u]);
    for (; i < pairs.size() && pairs[i].first == u; ++i) dd.emplace_back(du[pairs[i].second], tu[m.image[pairs[i].second]]);
  }
  DistortionReport r;
  r.pairs = dd.size();
  r.probe = probe;
  for (auto [a, b] : dd)
    if (b > a) r.contraction = false;
  auto additive = [&](double mult) {
    double worst = 0.0;
    for (auto [a, b] : dd) worst = std::max({worst, b - mult * a, a / mult - b});
    return worst;
  };
  double lo = 1.0, hi = 2.0;
  for (auto [a, b] : dd) hi = std::max(hi, double(a) + double(b) + 1.0);
  for (int it = 0; it < 200; ++it) {
    double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (m1 + additive(m1) <= m2 + additive(m2)) hi = m2; else lo = m1;
  }
  r.multiplicative = 0.5 * (lo + hi);
  r.additive = additive(r.multiplicative);
  // rough isometry with one constant
  std::vector<char> hit(y.size(), 0);
  std::vector<Vertex> image;
  for (Vertex v = 0; v < n; ++v)
    if (!hit[m.image[v]]) {
      hit[m.image[v]] = 1;
      image.push_back(m.image[v]);
    }
  std::vector<int> cover(y.size(), -1);
  std::vector<Vertex> queue(image);
  for (Vertex t : image) cover[t] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (Vertex z : y.neighbors(queue[h]))
      if (cover[z] < 0) {
        cover[z] = cover[queue[h]] + 1;
        queue.push_back(z);
      }
  r.coverage = *std::max_element(cover.begin(), cover.end());
  double k = std::max(1.0, r.coverage);
  for (auto [a, b] : dd) {
    k = std::max(k, double(b) / (double(a) + 1.0));
    k = std::max(k, (-double(b) + std::sqrt(double(b) * b + 4.0 * a)) / 2.0);
  }
  r.rough_kappa = k;
  r.satisfied_at_probe = k <= probe;
  return r;
}

inline constexpr int kExactCoverLimit = 12;

struct RegularityReport {
  int kappa_lipschitz = 1;            // least integer kappa meeting condition (1)
  std::optional<int> kappa_cover;     // least kappa meeting condition (2), if <= 12
  int greedy_cover = 0;               // greedy upper bound for condition (2)
  int kappa = 1;                      // requested
  bool condition1 = false;
  bool condition2 = false;
  bool regular = false;
  Vertex worst_target = 0;            // target ball needing the most source balls
};

namespace detail {

// Fewest closed unit balls of g covering `items` (vertex ids of g), if at
// most `limit`; nullopt otherwise.
class BallCover {
 public:
  explicit BallCover(const Graph& g) : g_(g), covered_(g.size(), 0), want_(g.size(), 0) {}

  int greedy(const std::vector<Vertex>& items) {
    for (Vertex v : items) want_[v] = 1;
    std::size_t left = items.size();
    int used = 0;
    std::vector<Vertex> candidates = centers(items);
    std::vector<Vertex> touched;
    while (left > 0) {
      Vertex best = 0;
      std::size_t gain = 0;
      for (Vertex c : candidates) {
        std::size_t gc = want_[c] && !covered_[c];
        for (Vertex z : g_.neighbors(c)) gc += want_[z] && !covered_[z];
        if (gc > gain) { gain = gc; best = c; }
      }
      mark(best, 1, touched);
      left -= gain;
      ++used;
    }
    for (Vertex v : touched) covered_[v] = 0;
    for (Vertex v : items) want_[v] = 0;
    return used;
  }

  std::optional<int> exact(const std::vector<Vertex>& items, int limit) {
    for (Vertex v : items) want_[v] = 1;
    std::optional<int> found;
    for (int k = 0; k <= limit && !found; ++k)
      if (search(items, k)) found = k;
    for (Vertex v : items) want_[v] = 0;
    return found;
  }

 private:
  std::vector<Vertex> centers(const std::vector<Vertex>& items) {
    std::vector<Vertex> c;
    for (Vertex v : items) {
      c.push_back(v);
      for (Vertex z : g_.neighbors(v)) c.push_back(z);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  void mark(Vertex c, int delta, std::vector<Vertex>& touched) {
    covered_[c] += delta;
    touched.push_back(c);
    for (Vertex z : g_.neighbors(c)) {
      covered_[z] += delta;
      touched.push_back(z);
    }
  }

  // first uncovered item must be covered by a ball centred in its closed neighbourhood
  bool search(const std::vector<Vertex>& items, int budget) {
    Vertex first = 0;
    bool any = false;
    for (Vertex v : items)
      if (!covered_[v]) { first = v; any = true; break; }
    if (!any) return true;
    if (budget == 0) return false;
    std::vector<Vertex> options{first};
    for (Vertex z : g_.neighbors(first)) options.push_back(z);
    std::vector<Vertex> scratch;
    for (Vertex c : options) {
      mark(c, 1, scratch);
      bool ok = search(items, budget - 1);
      scratch.clear();
      mark(c, -1, scratch);
      if (ok) return true;
    }
    return false;
  }

  const Graph& g_;
  std::vector<int> covered_;
  std::vector<char> want_;
};

}  // namespace detail

// Condition (1): d_Y(f x0, f x1) <= kappa (1 + d_X(x0, x1)) for all pairs.
// Condition (2): for each target y, f^-1 of the closed unit ball at y is
// covered by kappa closed unit balls of the source.
inline RegularityReport verify_regular(const GraphMap& m, int kappa) {
  if (kappa < 1) throw InputError("kappa must be at least 1");
  if (kappa > kExactCoverLimit)
    throw CapacityError("verify_regular covers exactly only up to kappa = " + std::to_string(kExactCoverLimit));
  const Graph& x = m.source;
  const Graph& y = m.target;
  RegularityReport r;
  r.kappa = kappa;
  std::vector<std::vector<int>> target_rows(y.size());
  int lip = 1;
  for (Vertex u = 0; u < x.size(); ++u) {
    auto du = bfs_distances(x, u);
    auto& tu = target_rows[m.image[u]];
    if (tu.empty()) tu = bfs_distances(y, m.image[u]);
    for (Vertex v = u + 1; v < x.size(); ++v) {
      if (du[v] == kUnreachable) continue;
      int dy = tu[m.image[v]];
      if (dy == kUnreachable) {
        lip = std::numeric_limits<int>::max();
        continue;
      }
      lip = std::max(lip, (dy + du[v]) / (1 + du[v]));  // ceil(dy / (1 + dx))
    }
  }
  r.kappa_lipschitz = lip;
  r.condition1 = lip <= kappa;

  std::vector<std::vector<Vertex>> fiber(y.size());
  for (Vertex v = 0; v < x.size(); ++v) fiber[m.image[v]].push_back(v);
  detail::BallCover cover(x);
  int worst_exact = 0;
  bool exact_known = true;
  r.condition2 = true;
  for (Vertex t = 0; t < y.size(); ++t) {
    std::vector<Vertex> pre(fiber[t]);
    for (Vertex z : y.neighbors(t)) pre.insert(pre.end(), fiber[z].begin(), fiber[z].end());
    if (pre.empty()) continue;
    std::sort(pre.begin(), pre.end());
    int greedy = cover.greedy(pre);
    if (greedy > r.greedy_cover) {
      r.greedy_cover = greedy;
      r.worst_target = t;
    }
    // exact count only when greedy cannot settle it
    if (exact_known) {
      auto e = greedy <= 1 ? std::optional<int>(greedy) : cover.exact(pre, std::min(greedy, kExactCoverLimit));
      if (e) worst_exact = std::max(worst_exact, *e);
      else exact_known = false;
    }
    if (greedy > kappa) {
      auto e = cover.exact(pre, kappa);
      if (!e) r.condition2 = false;
    }
  }
  if (exact_known) r.kappa_cover = std::max(1, worst_exact);
  r.regular = r.condition1 && r.condition2;
  return r;
}

enum class BallKind { open, closed };

struct SemiRegularityEntry {
  int r = 0;
  int c = 0;             // max component diameter
  Vertex worst_target = 0;
};

struct SemiRegularityTable {
  std::vector<SemiRegularityEntry> entries;
  bool lipschitz = true;  // d_Y(f u, f v) <= 1 on every edge
  BallKind kind = BallKind::open;
};

// c(r) = max over targets y of the largest source diameter of a connected
// component of f^-1(B(y, r)); open balls by default (d < r).
inline SemiRegularityTable verify_semi_regular(const GraphMap& m, const std::vector<int>& r_values,
                                               BallKind kind = BallKind::open) {
  const Graph& x = m.source;
  const Graph& y = m.target;
  SemiRegularityTable table;
  table.kind = kind;
  for (auto [u, v] : x.edges()) {
    Vertex a = m.image[u], b = m.image[v];
    if (a != b && !y.has_edge(a, b)) table.lipschitz = false;
  }
  DistanceMatrix<std::uint16_t> dx(x);
  std::vector<std::vector<int>> rows(y.size());
  for (Vertex t = 0; t < y.size(); ++t) rows[t] = bfs_distances(y, t);
  for (int r : r_values) {
    if (r < 0) throw InputError("radius must be non-negative");
    SemiRegularityEntry e;
    e.r = r;
    for (Vertex t = 0; t < y.size(); ++t) {
      std::vector<char> out(x.size(), 1);
      bool any = false;
      for (Vertex v = 0; v < x.size(); ++v) {
        int d = rows[t][m.image[v]];
        bool in = d != kUnreachable && (kind == BallKind::open ? d < r : d <= r);
        if (in) { out[v] = 0; any = true; }
      }
      if (!any) continue;
      for (const auto& comp : components_masked(x, out)) {
        int diam = 0;
        for (Vertex a : comp)
          for (Vertex b : comp) diam = std::max(diam, int(dx(a, b)));
        if (diam > e.c) {
          e.c = diam;
          e.worst_target = t;
        }
      }
    }
    table.entries.push_back(e);
  }
  return table;
}

struct PullbackResult {
  Separator separator;          // ids in the source graph
  bool valid = false;           // components of a - S have size <= |a|/2
  std::size_t max_component = 0;
  VertexSet target_separator;   // S'
  VertexSet neighborhood;       // S0, the 2 kappa neighbourhood of S'
  std::size_t max_fiber = 0;    // largest |f^-1(y) cap a|
  std::size_t rigorous_bound = 0;  // max_fiber * |S0|
  double degree_bound = 0.0;       // kappa * deg^(2 kappa) * |S'|
};

namespace detail {

inline std::vector<char> closed_neighborhood(const Graph& g, const std::vector<Vertex>& seeds, int radius) {
  std::vector<int> d(g.size(), -1);
  std::vector<Vertex> queue;
  for (Vertex s : seeds)
    if (d[s] < 0) {
      d[s] = 0;
      queue.push_back(s);
    }
  for (std::size_t h = 0; h < queue.size(); ++h) {
    if (d[queue[h]] == radius) continue;
    for (Vertex z : g.neighbors(queue[h]))
      if (d[z] < 0) {
        d[z] = d[queue[h]] + 1;
        queue.push_back(z);
      }
  }
  std::vector<char> in(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) in[i] = d[i] >= 0;
  return in;
}

inline void require_regular_connected(const GraphMap& m, const VertexSet& a, int kappa) {
  if (!verify_regular(m, kappa).regular)
    throw InputError("pullback_separator needs a map verified " + std::to_string(kappa) + "-regular");
  if (a.empty()) throw InputError("empty source set");
  auto sub = induced_subgraph(m.source, a);
  if (!is_connected(sub.graph)) throw InputError("source set does not induce a connected subgraph");
}

}  // namespace detail

// S = f^-1(S0) cap a with S0 the closed 2 kappa neighbourhood of the target
// separator S'. Validity is checked, not assumed.
inline PullbackResult pullback_separator(const GraphMap& m, const VertexSet& a, const VertexSet& sep_target,
                                         int kappa) {
  detail::require_regular_connected(m, a, kappa);
  for (Vertex t : sep_target) m.target.check_vertex(t);
  PullbackResult r;
  r.target_separator = sep_target;
  auto s0 = detail::closed_neighborhood(m.target, sep_target.ids(), 2 * kappa);
  std::vector<Vertex> s0_ids;
  for (Vertex t = 0; t < m.target.size(); ++t)
    if (s0[t]) s0_ids.push_back(t);
  r.neighborhood = VertexSet(s0_ids);
  std::vector<std::size_t> fiber(m.target.size(), 0);
  std::vector<Vertex> ids;
  for (Vertex v : a) {
    m.source.check_vertex(v);
    ++fiber[m.image[v]];
    if (s0[m.image[v]]) ids.push_back(v);
  }
  r.max_fiber = *std::max_element(fiber.begin(), fiber.end());
  r.rigorous_bound = r.max_fiber * s0_ids.size();
  r.degree_bound = kappa * std::pow(double(m.target.max_degree()), 2.0 * kappa) * double(sep_target.size());
  // balance is judged inside a
  auto sub = induced_subgraph(m.source, a);
  std::vector<char> removed(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) removed[i] = s0[m.image[a[i]]];
  r.max_component = max_component_masked(sub.graph, removed);
  r.valid = 2 * r.max_component <= a.size();
  r.separator.vertices = VertexSet(ids);
  r.separator.c = Balance(kHalf);
  r.separator.bound = Bound::inclusive;
  r.separator.max_component = r.max_component;
  r.separator.certified_optimal = false;
  r.separator.method = Method::constructive;
  return r;
}

// Same, with S' computed here: the exact solver on the 2 kappa neighbourhood
// B of f(a), at the balance that keeps max_fiber * |component| <= |a|/2.
inline PullbackResult pullback_separator(const GraphMap& m, const VertexSet& a, int kappa,
                                         const SolverOptions& opt = {}) {
  detail::require_regular_connected(m, a, kappa);
  std::vector<Vertex> img;
  std::vector<std::size_t> fiber(m.target.size(), 0);
  for (Vertex v : a) {
    img.push_back(m.image[v]);
    ++fiber[m.image[v]];
  }
  const std::size_t mf = *std::max_element(fiber.begin(), fiber.end());
  auto in_b = detail::closed_neighborhood(m.target, img, 2 * kappa);
  std::vector<Vertex> b_ids;
  for (Vertex t = 0; t < m.target.size(); ++t)
    if (in_b[t]) b_ids.push_back(t);
  auto b = induced_subgraph(m.target, b_ids);
  const std::size_t cap = a.size() / (2 * mf);  // allowed component size in B
  std::vector<Vertex> sep;
  if (cap == 0) {
    sep = b_ids;
  } else if (cap < b_ids.size()) {
    auto s = min_balanced_separator(b.graph, Balance(Rational(std::int64_t(cap) + 1, std::int64_t(b_ids.size()))), opt);
    for (Vertex v : s.vertices) sep.push_back(b.to_host[v]);
  }
  return pullback_separator(m, a, VertexSet(sep), kappa);
}

struct StrongTreeDecomposition {
  Graph tree;
  std::vector<VertexSet> parts;

  std::size_t width() const {
    std::size_t w = 0;
    for (auto& p : parts) w = std::max(w, p.size());
    return w;
  }
};

struct StrongTreeMap {
  GraphMap map;
  RegularityReport report;  // at the smallest kappa that passes
  int kappa = 1;
};

// x -> the tree node whose part contains x.
inline StrongTreeMap strong_td_to_tree_map(const Graph& g, const StrongTreeDecomposition& std_) {
  if (std_.parts.size() != std_.tree.size()) throw InputError("part count differs from tree node count");
  if (!is_tree(std_.tree)) throw InputError("strong decomposition tree is not a tree");
  std::vector<std::int64_t> owner(g.size(), -1);
  for (Vertex t = 0; t < std_.parts.size(); ++t) {
    if (std_.parts[t].empty()) throw InputError("part " + std::to_string(t) + " is empty");
    for (Vertex v : std_.parts[t]) {
      g.check_vertex(v);
      if (owner[v] >= 0) throw InputError("vertex " + std::to_string(v) + " lies in two parts");
      owner[v] = t;
    }
  }
  for (Vertex v = 0; v < g.size(); ++v)
    if (owner[v] < 0) throw InputError("vertex " + std::to_string(v) + " lies in no part");
  for (auto [u, v] : g.edges()) {
    auto a = Vertex(owner[u]), b = Vertex(owner[v]);
    if (a != b && !std_.tree.has_edge(a, b))
      throw InputError("edge {" + std::to_string(u) + "," + std::to_string(v) + "} joins non-adjacent parts");
  }
  StrongTreeMap out;
  std::vector<Vertex> image(g.size());
  for (Vertex v = 0; v < g.size(); ++v) image[v] = Vertex(owner[v]);
  out.map = GraphMap(g, std_.tree, std::move(image));
  for (int k = 1; k <= kExactCoverLimit; ++k) {
    out.report = verify_regular(out.map, k);
    out.kappa = k;
    if (out.report.regular) return out;
  }
  return out;
}

}  // namespace seplab
