#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "../graph.hpp"

namespace seplab {

enum class DeltaMethod { four_point, thin_triangles };

inline constexpr std::size_t kThinTrianglesLimit = 60;

namespace detail {

inline bool is_bipartite(const Graph& g) {
  auto d = bfs_distances(g, 0);
  for (auto [u, v] : g.edges())
    if ((d[u] - d[v]) % 2 == 0) return false;
  return true;
}

// Exact four-point constant, reported doubled (integer). Only pairs that are
// far apart (neither endpoint has a neighbour farther from the other) can be
// the largest-sum pair of an extremal quadruple, so pairs (a,b) and (c,d)
// are both drawn from that list, (c,d) earlier in decreasing distance order.
// With e(x) = d(a,x) + d(b,x) - d(a,b) and s(x) = d(a,x) - d(b,x) the
// quadruple reaches 2*delta >= t exactly when
//   e(c) + e(d) + |s(c) - s(d)| <= 2 (d(c,d) - t),
// so c and d both need e <= 2 (diam - t) and one of them e <= diam - t.
template <class T>
std::int64_t four_point_doubled(const Graph& g) {
  const std::size_t n = g.size();
  DistanceMatrix<T> dist(g);
  std::vector<std::pair<Vertex, Vertex>> far;
  for (Vertex a = 0; a < n; ++a) {
    const T* ra = dist.row(a);
    for (Vertex b = a + 1; b < n; ++b) {
      const T* rb = dist.row(b);
      bool ok = true;
      for (Vertex x : g.neighbors(a))
        if (rb[x] > rb[a]) { ok = false; break; }
      if (ok)
        for (Vertex y : g.neighbors(b))
          if (ra[y] > ra[b]) { ok = false; break; }
      if (ok) far.emplace_back(a, b);
    }
  }
  std::stable_sort(far.begin(), far.end(),
                   [&](const auto& p, const auto& q) { return dist(p.first, p.second) > dist(q.first, q.second); });
  if (far.empty()) return 0;
  const int diam = dist(far[0].first, far[0].second);
  // partners[x] = (index in far, other endpoint), ascending index
  std::vector<std::vector<std::pair<std::uint32_t, Vertex>>> partners(n);
  for (std::uint32_t j = 0; j < far.size(); ++j) {
    partners[far[j].first].emplace_back(j, far[j].second);
    partners[far[j].second].emplace_back(j, far[j].first);
  }
  const int step = is_bipartite(g) ? 2 : 1;  // all sums share parity on bipartite graphs
  int best = 0;
  std::vector<int> e(n), s(n);
  std::vector<Vertex> near;
  for (std::uint32_t i = 0; i < far.size(); ++i) {
    const auto [a, b] = far[i];
    const int dab = dist(a, b);
    int t = best + step;
    if (2 * dab < t) break;
    const T* ra = dist.row(a);
    const T* rb = dist.row(b);
    near.clear();
    for (Vertex x = 0; x < n; ++x) {
      e[x] = int(ra[x]) + int(rb[x]) - dab;
      s[x] = int(ra[x]) - int(rb[x]);
      if (e[x] <= diam - t) near.push_back(x);
    }
    for (Vertex c : near) {
      const T* rc = dist.row(c);
      const int slack = 2 * (diam - t) - e[c];
      for (auto [j, d] : partners[c]) {
        if (j >= i) break;
        if (e[d] > slack) continue;
        const int dcd = rc[d];
        if (e[c] + e[d] + std::abs(s[c] - s[d]) > 2 * (dcd - t)) continue;
        const int s1 = dab + dcd, s2 = int(ra[c]) + int(rb[d]), s3 = int(ra[d]) + int(rb[c]);
        const int hi = std::max({s1, s2, s3}), lo = std::min({s1, s2, s3});
        const int mid = s1 + s2 + s3 - hi - lo;
        if (hi - mid > best) {
          best = hi - mid;
          t = best + step;
        }
      }
    }
  }
  return best;
}

// F[x][a][b] = max over geodesics gamma from a to b of d(x, gamma), by a
// bottleneck recursion along the geodesic DAG from a.
inline std::int64_t thin_triangles_exact(const Graph& g) {
  const std::size_t n = g.size();
  DistanceMatrix<std::uint16_t> dist(g);
  std::vector<std::uint16_t> far_from(n * n * n, 0);
  auto F = [&](std::size_t x, std::size_t a, std::size_t b) -> std::uint16_t& { return far_from[(x * n + a) * n + b]; };
  std::vector<Vertex> order(n);
  for (Vertex a = 0; a < n; ++a) {
    std::iota(order.begin(), order.end(), Vertex{0});
    std::stable_sort(order.begin(), order.end(), [&](Vertex u, Vertex v) { return dist(a, u) < dist(a, v); });
    for (Vertex x = 0; x < n; ++x)
      for (Vertex b : order) {
        std::uint16_t via = 0;
        bool any = false;
        for (Vertex p : g.neighbors(b))
          if (dist(a, p) + 1 == dist(a, b)) {
            via = std::max(via, F(x, a, p));
            any = true;
          }
        std::uint16_t here = dist(x, b);
        F(x, a, b) = any ? std::min(here, via) : here;
      }
  }
  std::int64_t best = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = 0; v < n; ++v) {
      const int duv = dist(u, v);
      for (Vertex p = 0; p < n; ++p) {
        if (dist(u, p) + dist(p, v) != duv) continue;  // p on some geodesic u-v
        for (Vertex w = 0; w < n; ++w) {
          std::int64_t val = std::min(F(p, w, u), F(p, v, w));
          best = std::max(best, val);
        }
      }
    }
  return best;
}

}  // namespace detail

// four_point: the Gromov four-point constant (max over quadruples of half
// the gap between the two largest pair sums). thin_triangles: smallest
// delta such that every vertex on one side of any geodesic triangle is
// within delta of one of the other two sides, over all geodesic choices.
inline Rational hyperbolicity_delta(const Graph& g, DeltaMethod method = DeltaMethod::four_point) {
  if (g.size() == 0) return Rational(0, 1);
  if (!is_connected(g)) throw InputError("hyperbolicity of a disconnected graph");
  if (method == DeltaMethod::thin_triangles) {
    if (g.size() > kThinTrianglesLimit)
      throw CapacityError("thin_triangles is limited to " + std::to_string(kThinTrianglesLimit) + " vertices, got " +
                          std::to_string(g.size()));
    return Rational(detail::thin_triangles_exact(g), 1);
  }
  if (g.size() < 4) return Rational(0, 1);
  std::int64_t doubled = 0;
  // the diameter bounds the table entries; pick the narrow table when it fits
  if (eccentricity(g, 0) < 127) doubled = detail::four_point_doubled<std::uint8_t>(g);
  else doubled = detail::four_point_doubled<std::uint16_t>(g);
  return Rational(doubled, 2);
}

}  // namespace seplab
