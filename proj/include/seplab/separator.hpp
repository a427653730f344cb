#pragma once

#include <atomic>
#include <bit>
#include <numeric>
#include <unordered_map>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"
#include "tree_decomposition.hpp"

namespace seplab {

enum class Method { exhaustive, branch_and_bound, constructive, iterated };

inline std::string to_string(Method m) {
  switch (m) {
    case Method::exhaustive: return "exhaustive";
    case Method::branch_and_bound: return "branch_and_bound";
    case Method::constructive: return "constructive";
    case Method::iterated: return "iterated";
  }
  return "?";
}

struct Separator {
  VertexSet vertices;
  Balance c;
  Bound bound = Bound::strict;
  std::size_t max_component = 0;
  bool certified_optimal = false;
  Method method = Method::exhaustive;

  std::size_t size() const { return vertices.size(); }
};

struct BalanceReport {
  bool valid = false;
  std::size_t max_component = 0;
};

inline BalanceReport check_balance(const Graph& g, const VertexSet& cset, const Balance& c,
                                   Bound bound = Bound::strict) {
  c.validate();
  auto mc = max_component_masked(g, mask_of(g, cset));
  return {c.fits(mc, g.size(), bound), mc};
}

inline BalanceReport is_balanced_separator(const Graph& g, const VertexSet& cset, const Rational& c) {
  return check_balance(g, cset, Balance(c));
}

// Exhaustive search is meant for small inputs; above this the automatic
// choice is branch and bound.
inline constexpr std::size_t kExhaustiveLimit = 30;
inline constexpr std::size_t kTreewidthLimit = 18;

enum class SolverMethod { automatic, exhaustive, branch_and_bound };

struct SolverOptions {
  SolverMethod method = SolverMethod::automatic;
  std::optional<std::uint64_t> budget;  // search nodes
  unsigned threads = 0;                 // 0: default_threads()
};

namespace detail {

inline Separator make_separator(const Graph& g, std::vector<Vertex> ids, const Balance& c, Method m,
                                bool certified, Bound bound = Bound::strict) {
  Separator s;
  s.vertices = VertexSet(std::move(ids));
  s.c = c;
  s.bound = bound;
  s.max_component = max_component_masked(g, mask_of(g, s.vertices));
  s.certified_optimal = certified;
  s.method = m;
  return s;
}

// Adds the vertex that most shrinks the largest component until balanced.
inline std::vector<Vertex> greedy_separator(const Graph& g, const Balance& c) {
  std::vector<char> removed(g.size(), 0);
  std::vector<Vertex> chosen;
  while (!c.fits(max_component_masked(g, removed), g.size())) {
    auto comps = components_masked(g, removed);
    Vertex best = comps.front()[0];
    std::size_t best_mc = std::numeric_limits<std::size_t>::max();
    for (Vertex v : comps.front()) {
      removed[v] = 1;
      auto mc = max_component_masked(g, removed);
      removed[v] = 0;
      if (mc < best_mc) { best_mc = mc; best = v; }
    }
    removed[best] = 1;
    chosen.push_back(best);
  }
  return chosen;
}

// Max flow on an explicit arc list, augmenting along BFS paths.
class FlowNetwork {
 public:
  static constexpr int kInf = 1 << 29;

  explicit FlowNetwork(std::size_t nodes) : head_(nodes, -1) {}

  void add_arc(std::uint32_t from, std::uint32_t to, int cap) {
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = int(arcs_.size()) - 1;
    arcs_.push_back({from, 0, head_[to]});
    head_[to] = int(arcs_.size()) - 1;
  }

  // stops once `limit` units are routed
  int max_flow(std::uint32_t s, std::uint32_t t, int limit) {
    int flow = 0;
    std::vector<int> via(head_.size());
    std::vector<std::uint32_t> queue;
    while (flow < limit) {
      std::fill(via.begin(), via.end(), -1);
      queue.assign(1, s);
      via[s] = -2;
      for (std::size_t h = 0; h < queue.size() && via[t] == -1; ++h)
        for (int a = head_[queue[h]]; a >= 0; a = arcs_[a].next)
          if (arcs_[a].cap > 0 && via[arcs_[a].to] == -1) {
            via[arcs_[a].to] = a;
            queue.push_back(arcs_[a].to);
          }
      if (via[t] == -1) break;
      int push = limit - flow;
      for (auto x = t; x != s; x = arcs_[via[x] ^ 1].to) push = std::min(push, arcs_[via[x]].cap);
      for (auto x = t; x != s; x = arcs_[via[x] ^ 1].to) {
        arcs_[via[x]].cap -= push;
        arcs_[via[x] ^ 1].cap += push;
      }
      flow += push;
    }
    return flow;
  }

 private:
  struct Arc {
    std::uint32_t to;
    int cap;
    int next;
  };
  std::vector<int> head_;
  std::vector<Arc> arcs_;
};

// Minimum number of `open` vertices meeting every path from a source to a
// sink, capped at `limit`. kind: 0 removed, 1 open (cost one), 2 solid.
inline int vertex_cut(const Graph& g, const std::vector<std::uint8_t>& kind, const std::vector<Vertex>& sources,
                      const std::vector<Vertex>& sinks, int limit) {
  const auto n = std::uint32_t(g.size());
  FlowNetwork net(2 * n + 2);
  const std::uint32_t s = 2 * n, t = 2 * n + 1;
  for (Vertex x = 0; x < n; ++x) {
    if (kind[x] == 0) continue;
    net.add_arc(2 * x, 2 * x + 1, kind[x] == 1 ? 1 : FlowNetwork::kInf);
    for (Vertex y : g.neighbors(x))
      if (kind[y] != 0) net.add_arc(2 * x + 1, 2 * y, FlowNetwork::kInf);
  }
  for (Vertex a : sources) net.add_arc(s, 2 * a, FlowNetwork::kInf);
  for (Vertex b : sinks) net.add_arc(2 * b + 1, t, FlowNetwork::kInf);
  return net.max_flow(s, t, limit);
}

// Union-find over the vertices decided to stay, with the largest class size.
struct KeptForest {
  std::vector<Vertex> parent;
  std::vector<std::uint32_t> size;
  std::uint32_t largest = 0;

  explicit KeptForest(std::size_t n) : parent(n), size(n, 0) {}

  Vertex find(Vertex x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  Vertex root(Vertex x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  void keep(const Graph& g, Vertex v, const std::vector<char>& kept) {
    parent[v] = v;
    size[v] = 1;
    largest = std::max(largest, 1u);
    for (Vertex w : g.neighbors(v)) {
      if (!kept[w]) continue;
      Vertex a = find(v), b = find(w);
      if (a == b) continue;
      if (size[a] < size[b]) std::swap(a, b);
      parent[b] = a;
      size[a] += size[b];
      largest = std::max(largest, size[a]);
    }
  }
};

// Lexicographic depth-first search for a k-subset with a given first element.
// Vertices below the next candidate that were not chosen stay in the graph;
// a node dies once they already form a component that is too large, or
// when the two largest such components need more than the remaining budget
// of vertices to be cut apart.
class BranchSearch {
 public:
  BranchSearch(const Graph& g, std::size_t limit, std::size_t k, std::atomic<std::uint64_t>& nodes,
               std::uint64_t budget, std::atomic<bool>& aborted)
      : g_(g), n_(g.size()), limit_(limit), k_(k), nodes_(nodes), budget_(budget), aborted_(aborted),
        chosen_(n_, 0), kept_(n_, 0) {}

  // true and fills `out` when a valid set starting at `first` exists;
  // `hopeless` is set when no larger first element can work either.
  bool run(Vertex first, std::vector<Vertex>& out, bool& hopeless) {
    hopeless = false;
    KeptForest forest(n_);
    for (Vertex v = 0; v < first; ++v) {
      forest.keep(g_, v, kept_);
      kept_[v] = 1;
    }
    if (forest.largest > limit_) {
      hopeless = true;
      return false;
    }
    set_.assign(1, first);
    chosen_[first] = 1;
    bool ok = dfs(forest, first + 1);
    if (ok) out = set_;
    return ok;
  }

 private:
  bool dfs(const KeptForest& base, std::size_t p) {
    if (aborted_) return false;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return false;
    }
    const std::size_t need = k_ - set_.size();
    if (need == 0) return max_component_masked(g_, chosen_) <= limit_;
    if (!cut_bound_ok(base, p, need)) return false;
    KeptForest cur = base;
    std::vector<Vertex> added;
    bool found = false;
    for (std::size_t v = p; v + need <= n_; ++v) {
      set_.push_back(Vertex(v));
      chosen_[v] = 1;
      if (dfs(cur, v + 1)) { found = true; break; }
      set_.pop_back();
      chosen_[v] = 0;
      if (aborted_) break;
      cur.keep(g_, Vertex(v), kept_);
      kept_[v] = 1;
      added.push_back(Vertex(v));
      if (cur.largest > limit_) break;
    }
    for (Vertex v : added) kept_[v] = 0;
    return found;
  }

  bool cut_bound_ok(const KeptForest& forest, std::size_t p, std::size_t need) {
    // two largest kept classes
    Vertex r1 = Vertex(n_), r2 = Vertex(n_);
    for (Vertex v = 0; v < p; ++v) {
      if (!kept_[v] || forest.parent[v] != v) continue;
      if (r1 == n_ || forest.size[v] > forest.size[r1]) { r2 = r1; r1 = v; }
      else if (r2 == n_ || forest.size[v] > forest.size[r2]) r2 = v;
    }
    if (r2 == n_ || forest.size[r1] + forest.size[r2] <= limit_) return true;
    std::vector<std::uint8_t> kind(n_, 1);
    std::vector<Vertex> a, b;
    for (Vertex v = 0; v < n_; ++v) {
      if (chosen_[v]) kind[v] = 0;
      else if (v < p) {
        kind[v] = 2;
        Vertex r = forest.root(v);
        if (r == r1) a.push_back(v);
        else if (r == r2) b.push_back(v);
      }
    }
    return vertex_cut(g_, kind, a, b, int(need) + 1) <= int(need);
  }

  const Graph& g_;
  std::size_t n_;
  std::size_t limit_;
  std::size_t k_;
  std::atomic<std::uint64_t>& nodes_;
  std::uint64_t budget_;
  std::atomic<bool>& aborted_;
  std::vector<char> chosen_;
  std::vector<char> kept_;
  std::vector<Vertex> set_;
};

inline bool next_combination(std::vector<Vertex>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  for (std::size_t i = k; i-- > 0;) {
    if (comb[i] + (k - i) < n) {
      ++comb[i];
      for (std::size_t j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline Separator exhaustive_search(const Graph& g, const Balance& c, std::uint64_t budget) {
  const std::size_t n = g.size();
  std::uint64_t checks = 0;
  std::vector<char> mask(n);
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<Vertex> comb(k);
    std::iota(comb.begin(), comb.end(), Vertex{0});
    do {
      if (++checks > budget) return make_separator(g, greedy_separator(g, c), c, Method::exhaustive, false);
      std::fill(mask.begin(), mask.end(), 0);
      for (Vertex v : comb) mask[v] = 1;
      if (c.fits(max_component_masked(g, mask), n))
        return make_separator(g, comb, c, Method::exhaustive, true);
    } while (next_combination(comb, n));
  }
  return make_separator(g, greedy_separator(g, c), c, Method::exhaustive, false);
}

inline Separator branch_and_bound(const Graph& g, const Balance& c, std::uint64_t budget, unsigned threads) {
  const std::size_t n = g.size();
  const std::size_t limit = c.max_fitting(n);
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  if (n <= limit) return make_separator(g, {}, c, Method::branch_and_bound, true);
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t firsts = n - k + 1;
    std::vector<std::vector<Vertex>> found(firsts);
    std::vector<char> ok(firsts, 0);
    std::atomic<std::size_t> best_first{firsts};
    std::atomic<std::size_t> hopeless_from{firsts};
    parallel_for(firsts, threads, [&](std::size_t f) {
      if (f > best_first || f > hopeless_from || aborted) return;
      BranchSearch search(g, limit, k, nodes, budget, aborted);
      bool hopeless = false;
      if (search.run(Vertex(f), found[f], hopeless)) {
        ok[f] = 1;
        for (auto cur = best_first.load(); f < cur && !best_first.compare_exchange_weak(cur, f);) {
        }
      }
      if (hopeless)
        for (auto cur = hopeless_from.load(); f < cur && !hopeless_from.compare_exchange_weak(cur, f);) {
        }
    });
    for (std::size_t f = 0; f < firsts; ++f)
      if (ok[f] && !(f > hopeless_from))
        return make_separator(g, found[f], c, Method::branch_and_bound, !aborted);
    if (aborted) break;
  }
  return make_separator(g, greedy_separator(g, c), c, Method::branch_and_bound, false);
}

}  // namespace detail

// Smallest separator whose removal leaves components of size < c*n;
// among those of minimum size the lexicographically smallest.
inline Separator min_balanced_separator(const Graph& g, const Balance& c, const SolverOptions& opt = {}) {
  c.validate();
  if (!is_connected(g)) throw InputError("min_balanced_separator needs a connected graph");
  const std::uint64_t budget = opt.budget.value_or(std::numeric_limits<std::uint64_t>::max());
  const unsigned threads = opt.threads ? opt.threads : default_threads();
  bool exhaustive = opt.method == SolverMethod::exhaustive ||
                    (opt.method == SolverMethod::automatic && g.size() <= kExhaustiveLimit);
  if (opt.method == SolverMethod::exhaustive && g.size() > kExhaustiveLimit)
    throw CapacityError("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " vertices");
  return exhaustive ? detail::exhaustive_search(g, c, budget) : detail::branch_and_bound(g, c, budget, threads);
}

// c-balanced separator built by repeatedly halving every oversized piece with
// the exact 1/2 solver.
inline Separator refine_to_c(const Graph& g, const Balance& c, const SolverOptions& opt = {}) {
  c.validate();
  const auto p = c.base().num(), q = c.base().den();
  if (c.is_sqrt() ? 4 * p >= q : 2 * p >= q) return min_balanced_separator(g, c, opt);
  if (!is_connected(g)) throw InputError("refine_to_c needs a connected graph");
  std::vector<char> removed(g.size(), 0);
  for (;;) {
    auto pieces = components_masked(g, removed);
    bool changed = false;
    for (const auto& piece : pieces) {
      if (c.fits(piece.size(), g.size())) continue;
      auto sub = induced_subgraph(g, piece);
      auto s = min_balanced_separator(sub.graph, Balance(kHalf), opt);
      for (Vertex v : s.vertices) removed[sub.to_host[v]] = 1;
      changed = true;
    }
    if (!changed) break;
  }
  std::vector<Vertex> ids;
  for (Vertex v = 0; v < g.size(); ++v)
    if (removed[v]) ids.push_back(v);
  return detail::make_separator(g, ids, c, Method::iterated, false);
}

struct TreewidthResult {
  int width = -1;
  std::vector<Vertex> elimination_order;
};

// Subset dynamic program: TW(S) = min over v in S of max(TW(S-v), Q(S-v, v)),
// Q(S, v) = number of vertices outside S+v reachable from v through S.
inline TreewidthResult treewidth_exact(const Graph& g) {
  const std::size_t n = g.size();
  if (n > kTreewidthLimit)
    throw CapacityError("treewidth_exact is limited to " + std::to_string(kTreewidthLimit) + " vertices, got " +
                        std::to_string(n));
  TreewidthResult res;
  if (n == 0) return res;
  std::vector<std::uint32_t> nb(n, 0);
  for (auto [u, v] : g.edges()) {
    nb[u] |= 1u << v;
    nb[v] |= 1u << u;
  }
  auto q = [&](std::uint32_t s, std::size_t v) {
    std::uint32_t reach = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) next |= nb[std::countr_zero(f)];
      out |= next & ~s & ~(1u << v);
      next &= s & ~reach;
      reach |= next;
      frontier = next;
    }
    return std::popcount(out);
  };
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<std::int8_t> tw(std::size_t(full) + 1, 0);
  std::vector<std::uint8_t> last(std::size_t(full) + 1, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = 127;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      std::size_t v = std::countr_zero(rest);
      std::uint32_t without = s & ~(1u << v);
      int val = std::max<int>(tw[without], q(without, v));
      if (val < best) { best = val; last[s] = std::uint8_t(v); }
    }
    tw[s] = std::int8_t(best);
  }
  res.width = tw[full];
  std::vector<Vertex> rev;
  for (std::uint32_t s = full; s; s &= ~(1u << last[s])) rev.push_back(last[s]);
  res.elimination_order.assign(rev.rbegin(), rev.rend());
  return res;
}

struct ProductBoundReport {
  Separator cut_product;
  Separator cut_c_g;  // at c = sqrt(7/8)
  Separator cut_c_h;
  Separator cut_g;  // at c = 1/2
  Separator cut_h;
  std::size_t lhs_g = 0;  // |H| * cut^c(G)
  std::size_t lhs_h = 0;  // |G| * cut^c(H)
  double ratio_g = 0.0;   // cut(GxH) / lhs_g
  double ratio_h = 0.0;
  double ratio_min = 0.0;  // cut(GxH) / min(lhs_g, lhs_h)
  std::size_t upper = 0;   // min(|H| cut(G), |G| cut(H))
  bool upper_holds = false;
  bool certified = false;
  Balance c = Balance::sqrt_of({7, 8});
};

inline ProductBoundReport product_bound_report(const Graph& g, const Graph& h, const SolverOptions& opt = {}) {
  ProductBoundReport r;
  const Graph gh = cartesian_product(g, h);
  r.cut_product = min_balanced_separator(gh, Balance(kHalf), opt);
  r.cut_c_g = min_balanced_separator(g, r.c, opt);
  r.cut_c_h = min_balanced_separator(h, r.c, opt);
  r.cut_g = min_balanced_separator(g, Balance(kHalf), opt);
  r.cut_h = min_balanced_separator(h, Balance(kHalf), opt);
  r.lhs_g = h.size() * r.cut_c_g.size();
  r.lhs_h = g.size() * r.cut_c_h.size();
  auto ratio = [](std::size_t a, std::size_t b) { return b == 0 ? 0.0 : double(a) / double(b); };
  r.ratio_g = ratio(r.cut_product.size(), r.lhs_g);
  r.ratio_h = ratio(r.cut_product.size(), r.lhs_h);
  r.ratio_min = ratio(r.cut_product.size(), std::min(r.lhs_g, r.lhs_h));
  r.upper = std::min(h.size() * r.cut_g.size(), g.size() * r.cut_h.size());
  r.upper_holds = r.cut_product.size() <= r.upper;
  r.certified = r.cut_product.certified_optimal && r.cut_c_g.certified_optimal && r.cut_c_h.certified_optimal &&
                r.cut_g.certified_optimal && r.cut_h.certified_optimal;
  return r;
}

}  // namespace seplab
