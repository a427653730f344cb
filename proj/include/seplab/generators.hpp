#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"

namespace seplab {

enum class GridMetric { l1, linf };

// Box graph; vertex id = x0 + s0*(x1 + s1*(x2 + ...)).
inline Graph grid(const std::vector<std::uint32_t>& sides, GridMetric metric = GridMetric::l1) {
  if (sides.empty()) throw InputError("grid needs at least one side");
  std::size_t n = 1;
  for (auto s : sides) {
    if (s == 0) throw InputError("grid side must be positive");
    n *= s;
  }
  const std::size_t d = sides.size();
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t i = 1; i < d; ++i) stride[i] = stride[i - 1] * sides[i - 1];
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::int64_t> x(d), off(d);
  for (std::size_t id = 0; id < n; ++id) {
    for (std::size_t i = 0, rest = id; i < d; ++i) {
      x[i] = std::int64_t(rest % sides[i]);
      rest /= sides[i];
    }
    if (metric == GridMetric::l1) {
      for (std::size_t i = 0; i < d; ++i)
        if (x[i] + 1 < sides[i]) edges.emplace_back(Vertex(id), Vertex(id + stride[i]));
      continue;
    }
    // every offset in {-1,0,1}^d except zero; keep the forward half
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      bool inside = true, zero = true;
      std::int64_t target = 0;
      for (std::size_t i = 0, c = code; i < d; ++i, c /= 3) {
        off[i] = std::int64_t(c % 3) - 1;
        if (off[i] != 0) zero = false;
        auto y = x[i] + off[i];
        if (y < 0 || y >= std::int64_t(sides[i])) inside = false;
        target += y * std::int64_t(stride[i]);
      }
      if (!zero && inside && target > std::int64_t(id)) edges.emplace_back(Vertex(id), Vertex(target));
    }
  }
  return Graph::from_edges(n, edges);
}

// Complete binary tree, breadth-first ids, children 2i+1 and 2i+2.
inline Graph binary_tree(int depth) {
  if (depth < 0) throw InputError("negative tree depth");
  if (depth > 30) throw CapacityError("binary tree depth above 30");
  std::size_t n = (std::size_t{1} << (depth + 1)) - 1;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 1; i < n; ++i) edges.emplace_back(Vertex((i - 1) / 2), Vertex(i));
  return Graph::from_edges(n, edges);
}

// Dotted binary words "L.R" with |L|+|R| <= k. A step prepends/removes a digit
// at the left end of L (first tree) or appends/removes one at the right end of
// R (second tree). Ids follow BFS from "." so they grow with word length.
inline Graph tree_product_ball(int k) {
  if (k < 0) throw InputError("negative ball radius");
  if (k > 16) throw CapacityError("tree_product_ball radius above 16");
  std::vector<std::string> labels{"."};
  std::unordered_map<std::string, Vertex> id{{".", 0}};
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t head = 0; head < labels.size(); ++head) {
    const std::string w = labels[head];
    if (int(w.size()) - 1 >= k) continue;
    for (std::string next : {"0" + w, "1" + w, w + "0", w + "1"}) {
      auto [it, fresh] = id.emplace(next, Vertex(labels.size()));
      if (fresh) labels.push_back(next);
      edges.emplace_back(Vertex(head), it->second);
    }
  }
  Graph g = Graph::from_edges(labels.size(), edges);
  g.set_labels(std::move(labels));
  return g;
}

// Depth of a dotted word in each tree factor.
inline std::pair<int, int> dotted_depths(const std::string& label) {
  auto dot = label.find('.');
  if (dot == std::string::npos || label.find('.', dot + 1) != std::string::npos)
    throw InputError("label '" + label + "' is not a dotted word");
  for (char ch : label)
    if (ch != '.' && ch != '0' && ch != '1') throw InputError("label '" + label + "' is not a dotted word");
  return {int(dot), int(label.size() - dot - 1)};
}

// Sierpinski gasket on triangular-lattice points; level l has side 2^(l-1).
// Ids follow lexicographic lattice coordinates, so the corner (0,0) is 0.
inline Graph sierpinski(int level) {
  if (level < 1) throw InputError("sierpinski level must be at least 1");
  if (level > 12) throw CapacityError("sierpinski level above 12");
  using P = std::pair<int, int>;
  std::vector<std::array<P, 3>> tris{{P{0, 0}, P{1, 0}, P{0, 1}}};
  for (int l = 1, s = 1; l < level; ++l, s *= 2) {
    std::vector<std::array<P, 3>> next;
    for (auto [dx, dy] : {P{0, 0}, P{s, 0}, P{0, s}})
      for (auto& t : tris) {
        std::array<P, 3> u;
        for (int i = 0; i < 3; ++i) u[i] = {t[i].first + dx, t[i].second + dy};
        next.push_back(u);
      }
    tris = std::move(next);
  }
  std::map<P, Vertex> id;
  for (auto& t : tris)
    for (auto& p : t) id.emplace(p, 0);
  Vertex next_id = 0;
  for (auto& [p, v] : id) v = next_id++;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (auto& t : tris)
    for (int i = 0; i < 3; ++i) edges.emplace_back(id[t[i]], id[t[(i + 1) % 3]]);
  return Graph::from_edges(id.size(), edges);
}

namespace detail {

// SU(1,1) element [[a, b], [conj b, conj a]] acting on the Poincare disk.
struct Mobius {
  std::complex<double> a{1.0, 0.0};
  std::complex<double> b{0.0, 0.0};

  Mobius operator*(const Mobius& o) const {
    return {a * o.a + b * std::conj(o.b), a * o.b + b * std::conj(o.a)};
  }
  std::complex<double> origin_image() const { return b / std::conj(a); }

  static Mobius rotation(double theta) { return {std::polar(1.0, theta / 2), 0.0}; }
  static Mobius translation(double dist) { return {std::cosh(dist / 2), std::sinh(dist / 2)}; }
};

}  // namespace detail

// Vertex graph of the {p,q} tessellation, ball of radius r around a vertex at
// the origin, grown layer by layer. The q neighbours of the vertex mapped to
// the origin by M are the images of the origin under M*R(2 pi j/q)*T(l)*R(pi).
// Points within 1e-9 of an existing vertex are merged.
inline Graph hyperbolic_tiling_ball(int p, int q, int r) {
  if (p < 3 || q < 3 || (p - 2) * (q - 2) <= 4)
    throw InputError("{" + std::to_string(p) + "," + std::to_string(q) + "} is not a hyperbolic tiling");
  if (r < 0) throw InputError("negative ball radius");
  using detail::Mobius;
  const double pi = std::numbers::pi;
  const double len = 2.0 * std::acosh(std::cos(pi / p) / std::sin(pi / q));
  const Mobius half_turn = Mobius::translation(len) * Mobius::rotation(pi);
  std::vector<Mobius> gens;
  for (int j = 0; j < q; ++j) gens.push_back(Mobius::rotation(2 * pi * j / q) * half_turn);

  constexpr double tol = 1e-9;
  constexpr double cell = 1e-6;
  std::unordered_map<std::uint64_t, std::vector<Vertex>> buckets;
  auto cell_key = [&](std::int64_t cx, std::int64_t cy) {
    return (std::uint64_t(cx) << 32) ^ std::uint64_t(cy & 0xffffffff);
  };
  std::vector<std::complex<double>> pts{0.0};
  std::vector<Mobius> mats{Mobius{}};
  auto locate = [&](std::complex<double> z) -> std::int64_t {
    auto cx = std::int64_t(std::floor(z.real() / cell)), cy = std::int64_t(std::floor(z.imag() / cell));
    for (std::int64_t dx = -1; dx <= 1; ++dx)
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        auto it = buckets.find(cell_key(cx + dx, cy + dy));
        if (it == buckets.end()) continue;
        for (Vertex v : it->second)
          if (std::abs(pts[v] - z) < tol) return v;
      }
    return -1;
  };
  auto insert = [&](std::complex<double> z, Vertex v) {
    buckets[cell_key(std::int64_t(std::floor(z.real() / cell)), std::int64_t(std::floor(z.imag() / cell)))]
        .push_back(v);
  };
  insert(pts[0], 0);

  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Vertex> layer{0};
  for (int d = 0; d <= r; ++d) {
    std::vector<Vertex> next;
    for (Vertex v : layer)
      for (const auto& gen : gens) {
        Mobius m = mats[v] * gen;
        auto z = m.origin_image();
        auto found = locate(z);
        if (found >= 0) {
          if (Vertex(found) != v) edges.emplace_back(v, Vertex(found));
        } else if (d < r) {
          if (!(std::abs(z) < 1.0)) throw CapacityError("tiling radius exceeds double precision");
          auto u = Vertex(pts.size());
          pts.push_back(z);
          mats.push_back(m);
          insert(z, u);
          next.push_back(u);
          edges.emplace_back(v, u);
        }
      }
    layer = std::move(next);
  }
  Graph g = Graph::from_edges(pts.size(), edges);
  std::vector<Point> coords;
  for (auto z : pts) coords.push_back({z.real(), z.imag()});
  g.set_coords(std::move(coords));
  return g;
}

// Ball in the Cayley graph of Z/2 wr Z for generators t, t^-1, a.
// Labels are "pos|lamp,lamp,..." with lit lamps ascending.
inline Graph lamplighter_ball(int r) {
  if (r < 0) throw InputError("negative ball radius");
  if (r > 16) throw CapacityError("lamplighter ball radius above 16");
  using State = std::pair<int, std::vector<int>>;
  std::map<State, Vertex> id;
  std::vector<State> states{{0, {}}};
  std::vector<int> depth{0};
  id.emplace(states[0], 0);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t head = 0; head < states.size(); ++head) {
    const State s = states[head];
    State moves[3] = {{s.first + 1, s.second}, {s.first - 1, s.second}, s};
    auto& lamps = moves[2].second;
    auto at = std::lower_bound(lamps.begin(), lamps.end(), s.first);
    if (at != lamps.end() && *at == s.first) lamps.erase(at); else lamps.insert(at, s.first);
    for (auto& t : moves) {
      auto it = id.find(t);
      if (it == id.end()) {
        if (depth[head] >= r) continue;
        it = id.emplace(t, Vertex(states.size())).first;
        states.push_back(t);
        depth.push_back(depth[head] + 1);
      }
      edges.emplace_back(Vertex(head), it->second);
    }
  }
  Graph g = Graph::from_edges(states.size(), edges);
  std::vector<std::string> labels;
  for (auto& [pos, lamps] : states) {
    std::string l = std::to_string(pos) + "|";
    for (std::size_t i = 0; i < lamps.size(); ++i) l += (i ? "," : "") + std::to_string(lamps[i]);
    labels.push_back(std::move(l));
  }
  g.set_labels(std::move(labels));
  return g;
}

inline int lamplighter_position(const std::string& label) {
  auto bar = label.find('|');
  if (bar == std::string::npos) throw InputError("label '" + label + "' is not a lamplighter state");
  return std::stoi(label.substr(0, bar));
}

// Marker position of lamplighter_ball(r), as a map onto the path P_{2r+1}
// (position x goes to vertex x + r).
inline GraphMap lamplighter_position_map(int r) {
  Graph ball = lamplighter_ball(r);
  std::vector<Vertex> image;
  for (const auto& l : ball.labels()) image.push_back(Vertex(lamplighter_position(l) + r));
  return GraphMap(ball, grid({std::uint32_t(2 * r + 1)}), std::move(image));
}

// [0,w) x [0,h), id x + w*y; vertical edges everywhere, horizontal on y = 0.
inline Graph comb(std::uint32_t width, std::uint32_t height) {
  if (width == 0 || height == 0) throw InputError("comb sides must be positive");
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Vertex y = 0; y < height; ++y)
    for (Vertex x = 0; x < width; ++x) {
      Vertex v = x + width * y;
      if (y + 1 < height) edges.emplace_back(v, v + width);
      if (y == 0 && x + 1 < width) edges.emplace_back(v, v + 1);
    }
  return Graph::from_edges(std::size_t(width) * height, edges);
}

enum class Family { grid, grid_linf, binary_tree, tree_product_ball, sierpinski, hyperbolic_tiling_ball, lamplighter_ball, comb };

inline const std::vector<std::pair<Family, std::string>>& family_names() {
  static const std::vector<std::pair<Family, std::string>> names{
      {Family::grid, "grid"},
      {Family::grid_linf, "grid_linf"},
      {Family::binary_tree, "binary_tree"},
      {Family::tree_product_ball, "tree_product_ball"},
      {Family::sierpinski, "sierpinski"},
      {Family::hyperbolic_tiling_ball, "hyperbolic_tiling_ball"},
      {Family::lamplighter_ball, "lamplighter_ball"},
      {Family::comb, "comb"}};
  return names;
}

inline std::string to_string(Family f) {
  for (auto& [k, v] : family_names())
    if (k == f) return v;
  return "?";
}

// "name:p1:p2:..." e.g. "grid:5:5", "hyperbolic_tiling_ball:4:5:3".
struct FamilySpec {
  Family family = Family::grid;
  std::vector<std::int64_t> params;

  static FamilySpec parse(const std::string& text) {
    std::stringstream ss(text);
    std::string tok;
    std::getline(ss, tok, ':');
    FamilySpec spec;
    bool known = false;
    for (auto& [k, v] : family_names())
      if (v == tok) { spec.family = k; known = true; }
    if (!known) throw InputError("unknown family '" + tok + "'");
    while (std::getline(ss, tok, ':')) {
      try {
        std::size_t used = 0;
        auto v = std::stoll(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        spec.params.push_back(v);
      } catch (const std::logic_error&) {
        throw InputError("bad family parameter '" + tok + "' in '" + text + "'");
      }
    }
    return spec;
  }

  std::string str() const {
    std::string s = to_string(family);
    for (auto p : params) s += ":" + std::to_string(p);
    return s;
  }

  // The same family with one more parameter appended (the swept one).
  FamilySpec with(std::int64_t param) const {
    FamilySpec s = *this;
    s.params.push_back(param);
    return s;
  }
};

// Builds the graph of a fully specified family. For grid/grid_linf the
// parameters are the sides; comb takes (w,h) or a single side.
inline Graph make_graph(const FamilySpec& spec) {
  const auto& p = spec.params;
  auto need = [&](std::size_t count) {
    if (p.size() != count)
      throw InputError(spec.str() + ": expected " + std::to_string(count) + " parameter(s)");
  };
  auto side = [](std::int64_t v) {
    if (v > std::int64_t(UINT32_MAX)) throw InputError("parameter too large");
    return std::uint32_t(v);
  };
  switch (spec.family) {
    case Family::grid:
    case Family::grid_linf: {
      if (p.empty()) throw InputError(spec.str() + ": grid needs side lengths");
      std::vector<std::uint32_t> sides;
      for (auto v : p) sides.push_back(side(v));
      return grid(sides, spec.family == Family::grid ? GridMetric::l1 : GridMetric::linf);
    }
    case Family::binary_tree: need(1); return binary_tree(int(p[0]));
    case Family::tree_product_ball: need(1); return tree_product_ball(int(p[0]));
    case Family::sierpinski: need(1); return sierpinski(int(p[0]));
    case Family::hyperbolic_tiling_ball: need(3); return hyperbolic_tiling_ball(int(p[0]), int(p[1]), int(p[2]));
    case Family::lamplighter_ball: need(1); return lamplighter_ball(int(p[0]));
    case Family::comb:
      if (p.size() == 1) return comb(side(p[0]), side(p[0]));
      need(2);
      return comb(side(p[0]), side(p[1]));
  }
  throw InputError("unknown family");
}

}  // namespace seplab
