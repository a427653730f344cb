#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <random>
#include <tuple>
#include <vector>

#include "generators.hpp"
#include "separator.hpp"
#include "tree_decomposition.hpp"

namespace seplab {

struct TTreeResult {
  Separator separator;
  bool fallback = false;     // extra level sets were needed
  bool median_level = false;  // A1(m1) alone was small enough
  double threshold = 0.0;    // tau * n / ln n
  int m1 = 0, m2 = 0;
  int k1_minus = 0, k1_plus = 0, k2_minus = 0, k2_plus = 0;
};

// Median level-set separator for subsets of T x T. Vertex labels must be
// dotted words (tree_product_ball output or induced subgraphs of it).
inline TTreeResult ttree_median_separator(const Graph& s, double tau = 1.0) {
  if (!s.has_labels()) throw InputError("ttree_median_separator needs dotted-word labels");
  if (!(tau > 0)) throw InputError("tau must be positive");
  const std::size_t n = s.size();
  TTreeResult res;
  const Balance half(kHalf);
  if (n == 0) throw InputError("empty graph");
  if (n == 1) {
    res.separator = detail::make_separator(s, {0}, half, Method::constructive, false);
    return res;
  }
  std::vector<int> depth[2];
  for (const auto& l : s.labels()) {
    auto [d1, d2] = dotted_depths(l);
    depth[0].push_back(d1);
    depth[1].push_back(d2);
  }
  int top = 0;
  for (auto& d : depth) top = std::max(top, *std::max_element(d.begin(), d.end()));
  // level[j][k] = vertices with D(p_j(v)) = k
  std::vector<std::vector<std::vector<Vertex>>> level(2, std::vector<std::vector<Vertex>>(top + 2));
  for (Vertex v = 0; v < n; ++v)
    for (int j = 0; j < 2; ++j) level[j][depth[j][v]].push_back(v);
  auto median = [&](int j) {
    auto d = depth[j];
    std::sort(d.begin(), d.end());
    return d[(n - 1) / 2];
  };
  auto size_at = [&](int j, int k) -> std::size_t {
    return k < 0 || k > top + 1 ? 0 : level[j][k].size();
  };
  const double theta = tau * double(n) / std::log(double(n));
  res.threshold = theta;
  res.m1 = median(0);
  res.m2 = median(1);

  std::vector<char> removed(n, 0);
  auto take = [&](int j, int k) {
    if (k < 0 || k > top + 1) return;
    for (Vertex v : level[j][k]) removed[v] = 1;
  };
  if (double(size_at(0, res.m1)) < theta) {
    res.median_level = true;
    take(0, res.m1);
  } else {
    int ks[2][2];
    for (int j = 0; j < 2; ++j) {
      const int m = j == 0 ? res.m1 : res.m2;
      int lo = m, hi = m;
      while (lo >= 0 && !(double(size_at(j, lo)) < theta)) --lo;   // level -1 is empty
      while (!(double(size_at(j, hi)) < theta)) ++hi;               // levels past top are empty
      ks[j][0] = lo;
      ks[j][1] = hi;
      take(j, lo);
      take(j, hi);
    }
    res.k1_minus = ks[0][0];
    res.k1_plus = ks[0][1];
    res.k2_minus = ks[1][0];
    res.k2_plus = ks[1][1];
  }
  while (!half.fits(max_component_masked(s, removed), n)) {
    res.fallback = true;
    std::tuple<std::size_t, std::size_t, int, int> best{SIZE_MAX, SIZE_MAX, 0, 0};
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k <= top; ++k) {
        bool adds = false;
        for (Vertex v : level[j][k]) adds = adds || !removed[v];
        if (!adds) continue;
        auto trial = removed;
        for (Vertex v : level[j][k]) trial[v] = 1;
        std::tuple<std::size_t, std::size_t, int, int> key{
            max_component_masked(s, trial), std::size_t(std::count(trial.begin(), trial.end(), 1)), j, k};
        best = std::min(best, key);
      }
    take(std::get<2>(best), std::get<3>(best));
  }
  std::vector<Vertex> ids;
  for (Vertex v = 0; v < n; ++v)
    if (removed[v]) ids.push_back(v);
  res.separator = detail::make_separator(s, ids, half, Method::constructive, false);
  return res;
}

// Axis-aligned box, sides as passed to grid().
struct GridShape {
  std::vector<std::uint32_t> sides;
};

// Slab at the lower middle of the longest axis (first such axis on ties).
inline Separator hyperplane_separator(const Graph& g, const GridShape& shape) {
  std::size_t n = 1;
  for (auto s : shape.sides) n *= s;
  if (shape.sides.empty() || n != g.size()) throw InputError("grid shape does not match the graph");
  const Balance two_thirds(Rational(2, 3));
  if (n == 1) return detail::make_separator(g, {0}, two_thirds, Method::constructive, false);
  std::size_t axis = 0;
  for (std::size_t i = 1; i < shape.sides.size(); ++i)
    if (shape.sides[i] > shape.sides[axis]) axis = i;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < axis; ++i) stride *= shape.sides[i];
  const std::size_t mid = (shape.sides[axis] - 1) / 2;
  std::vector<Vertex> ids;
  for (std::size_t v = 0; v < n; ++v)
    if ((v / stride) % shape.sides[axis] == mid) ids.push_back(Vertex(v));
  return detail::make_separator(g, ids, two_thirds, Method::constructive, false);
}

struct HyperplaneTrial {
  double angle = 0.0;
  std::size_t size = 0;
  std::size_t max_component = 0;
  bool balanced = false;
};

struct HyperplaneResult {
  Separator separator;
  std::size_t trial = 0;  // index of the winning angle
  double angle = 0.0;
  Point centroid;
  std::vector<HyperplaneTrial> trials;
};

// Geodesics of the Poincare disk through the coordinate centroid c, at
// seeded random angles. After moving c to the origin with z -> (z-c)/(1-conj(c)z)
// they are diameters. A vertex is hit when the diameter passes within half
// its shortest edge of it; every edge still crossing the diameter
// contributes its endpoint nearer to it. The smallest 2/3-balanced result wins.
inline HyperplaneResult hyperplane_separator(const Graph& g, int trials, std::uint64_t seed, unsigned threads = 0) {
  if (!g.has_coords()) throw InputError("hyperplane_separator needs vertex coordinates or a grid shape");
  if (trials <= 0) throw InputError("trials must be positive");
  const std::size_t n = g.size();
  const Balance two_thirds(Rational(2, 3));
  HyperplaneResult res;
  if (n == 0) throw InputError("empty graph");
  using C = std::complex<double>;
  C centroid = 0.0;
  for (auto& p : g.coords()) centroid += C(p.x, p.y);
  centroid /= double(n);
  res.centroid = {centroid.real(), centroid.imag()};
  if (n == 1) {
    res.separator = detail::make_separator(g, {0}, two_thirds, Method::constructive, false);
    return res;
  }
  std::vector<C> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    C z(g.coords()[i].x, g.coords()[i].y);
    w[i] = (z - centroid) / (1.0 - std::conj(centroid) * z);
  }
  std::vector<double> reach(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    double m = std::numeric_limits<double>::infinity();
    for (Vertex u : g.neighbors(v)) m = std::min(m, std::abs(w[u] - w[v]));
    reach[v] = std::isinf(m) ? 0.0 : 0.5 * m;
  }
  std::mt19937_64 rng(seed);
  std::vector<double> angles(trials);
  for (auto& a : angles) a = double(rng() >> 11) * 0x1.0p-53 * std::numbers::pi;

  std::vector<std::vector<Vertex>> cuts(trials);
  res.trials.resize(trials);
  parallel_for(std::size_t(trials), threads ? threads : default_threads(), [&](std::size_t t) {
    const C dir = std::polar(1.0, angles[t]);
    std::vector<double> side(n);
    std::vector<char> removed(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      side[v] = (std::conj(dir) * w[v]).imag();  // signed distance to the diameter
      if (std::abs(side[v]) <= reach[v]) removed[v] = 1;
    }
    for (auto [u, v] : g.edges()) {
      if (removed[u] || removed[v]) continue;
      if ((side[u] < 0) == (side[v] < 0)) continue;
      Vertex near = std::abs(side[u]) <= std::abs(side[v]) ? u : v;
      removed[near] = 1;
    }
    auto mc = max_component_masked(g, removed);
    for (Vertex v = 0; v < n; ++v)
      if (removed[v]) cuts[t].push_back(v);
    res.trials[t] = {angles[t], cuts[t].size(), mc, two_thirds.fits(mc, n)};
  });
  std::size_t best = trials;
  for (std::size_t t = 0; t < std::size_t(trials); ++t)
    if (res.trials[t].balanced && (best == std::size_t(trials) || res.trials[t].size < res.trials[best].size))
      best = t;
  if (best == std::size_t(trials))
    throw SearchError("no sampled geodesic gave a 2/3-balanced cut in " + std::to_string(trials) +
                      " trials; try more trials or another seed");
  res.trial = best;
  res.angle = angles[best];
  res.separator = detail::make_separator(g, cuts[best], two_thirds, Method::constructive, false);
  return res;
}

// The bag V_x minimising, over components C of T - x, the number of
// vertices in bags of C but not in V_x. Balanced with <= n/2.
inline Separator bag_separator(const Graph& g, const TreeDecomposition& td) {
  validate_tree_decomposition(g, td);
  const std::size_t nodes = td.tree.size();
  std::size_t best_cost = SIZE_MAX;
  Vertex best = 0;
  std::vector<char> in_bag(g.size()), counted(g.size());
  for (Vertex x = 0; x < nodes; ++x) {
    std::fill(in_bag.begin(), in_bag.end(), 0);
    for (Vertex v : td.bags[x]) in_bag[v] = 1;
    std::vector<char> removed(nodes, 0);
    removed[x] = 1;
    std::size_t cost = 0;
    for (const auto& comp : components_masked(td.tree, removed)) {
      std::fill(counted.begin(), counted.end(), 0);
      std::size_t c = 0;
      for (Vertex t : comp)
        for (Vertex v : td.bags[t])
          if (!in_bag[v] && !counted[v]) {
            counted[v] = 1;
            ++c;
          }
      cost = std::max(cost, c);
    }
    if (cost < best_cost) {
      best_cost = cost;
      best = x;
    }
  }
  return detail::make_separator(g, td.bags[best].ids(), Balance(kHalf), Method::constructive, false,
                                Bound::inclusive);
}

}  // namespace seplab
