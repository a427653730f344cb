#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "constructive.hpp"
#include "generators.hpp"
#include "separator.hpp"
#include "tree_decomposition.hpp"

namespace seplab {

struct ProfilePoint {
  std::int64_t param = 0;
  std::size_t n = 0;
  std::size_t cut = 0;
  std::string method;
  bool certified = false;

  friend bool operator==(const ProfilePoint&, const ProfilePoint&) = default;
};

// Exact certified points are cuts of the witness subgraphs, so lower bounds
// for the separation function; constructive points are upper bounds for the
// cut of the same witness.
inline std::string bound_kind(const ProfilePoint& p) { return p.certified ? "lower" : "upper"; }

struct ProfileCurve {
  FamilySpec family;  // without the swept parameter
  std::vector<ProfilePoint> points;
  std::optional<std::string> truncation;  // why the sweep stopped early
};

// "exact" or "constructive:<ttree|hyperplane|bag>".
struct ProfileMethod {
  bool exact = true;
  std::string constructive;

  static ProfileMethod parse(const std::string& text) {
    if (text == "exact") return {};
    const std::string prefix = "constructive:";
    if (text.rfind(prefix, 0) == 0) {
      ProfileMethod m{false, text.substr(prefix.size())};
      if (m.constructive == "ttree" || m.constructive == "hyperplane" || m.constructive == "bag") return m;
    }
    throw InputError("unknown profile method '" + text + "' (exact, constructive:ttree, constructive:hyperplane, constructive:bag)");
  }

  std::string str() const { return exact ? "exact" : "constructive:" + constructive; }
};

struct ProfileOptions {
  Rational c = kHalf;
  ProfileMethod method;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::optional<std::uint64_t> budget;  // exact solver search nodes per point
  int hyperplane_trials = 64;
};

// The witness for one sweep value: grid:d sweeps the box side ([k]*d, d = 2
// when omitted), a bare comb sweeps a square comb, every other family takes
// the value as its last parameter.
inline FamilySpec profile_instance(const FamilySpec& base, std::int64_t param) {
  if (base.family == Family::grid || base.family == Family::grid_linf) {
    std::int64_t d = base.params.empty() ? 2 : base.params[0];
    if (base.params.size() > 1) throw InputError("grid sweeps take one parameter (the dimension)");
    if (d < 1 || d > 8) throw InputError("grid dimension must be in 1..8");
    FamilySpec s{base.family, std::vector<std::int64_t>(std::size_t(d), param)};
    return s;
  }
  if (base.family == Family::comb && base.params.empty()) return FamilySpec{Family::comb, {param, param}};
  return base.with(param);
}

namespace detail {

inline ProfilePoint profile_point(const FamilySpec& base, std::int64_t param, const ProfileOptions& opt,
                                  unsigned inner_threads) {
  const auto spec = profile_instance(base, param);
  const Graph g = make_graph(spec);
  ProfilePoint p;
  p.param = param;
  p.n = g.size();
  if (opt.method.exact) {
    SolverOptions so;
    so.budget = opt.budget;
    so.threads = inner_threads;
    auto s = min_balanced_separator(g, Balance(opt.c), so);
    p.cut = s.size();
    p.method = to_string(s.method);
    p.certified = s.certified_optimal;
    return p;
  }
  const auto& name = opt.method.constructive;
  p.method = opt.method.str();
  if (name == "ttree") {
    p.cut = ttree_median_separator(g).separator.size();
  } else if (name == "hyperplane") {
    if (g.has_coords()) {
      p.cut = hyperplane_separator(g, opt.hyperplane_trials, opt.seed, inner_threads).separator.size();
    } else if (spec.family == Family::grid || spec.family == Family::grid_linf) {
      GridShape shape;
      for (auto v : spec.params) shape.sides.push_back(std::uint32_t(v));
      p.cut = hyperplane_separator(g, shape).size();
    } else {
      throw InputError("constructive:hyperplane needs coordinates or a grid family");
    }
  } else {
    auto tw = treewidth_exact(g);
    p.cut = bag_separator(g, tree_decomposition_from_order(g, tw.elimination_order)).size();
  }
  return p;
}

}  // namespace detail

// One point per parameter in [first, last]. Points run concurrently; a point
// that fails (capacity, search) ends the curve there with a notice.
inline ProfileCurve run_profile(const FamilySpec& family, std::int64_t first, std::int64_t last,
                                const ProfileOptions& opt = {}) {
  if (first > last) throw InputError("empty parameter range");
  if (opt.method.exact) Balance(opt.c).validate();
  const std::size_t count = std::size_t(last - first + 1);
  std::vector<std::optional<ProfilePoint>> points(count);
  std::vector<std::string> errors(count);
  const unsigned threads = opt.threads ? opt.threads : default_threads();
  const unsigned inner = count > 1 ? 1 : threads;
  parallel_for(count, threads, [&](std::size_t i) {
    try {
      points[i] = detail::profile_point(family, first + std::int64_t(i), opt, inner);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  ProfileCurve curve;
  curve.family = family;
  for (std::size_t i = 0; i < count; ++i) {
    if (!points[i]) {
      curve.truncation = "stopped at parameter " + std::to_string(first + std::int64_t(i)) + ": " + errors[i];
      break;
    }
    curve.points.push_back(*points[i]);
  }
  return curve;
}

enum class GrowthClass { bounded, logarithmic, power, power_times_log, n_over_log, linear };

inline const std::vector<std::pair<GrowthClass, std::string>>& growth_class_names() {
  static const std::vector<std::pair<GrowthClass, std::string>> names{
      {GrowthClass::bounded, "bounded"},
      {GrowthClass::logarithmic, "logarithmic"},
      {GrowthClass::power, "power"},
      {GrowthClass::power_times_log, "power_times_log"},
      {GrowthClass::n_over_log, "n_over_log"},
      {GrowthClass::linear, "linear"}};
  return names;
}

inline std::string to_string(GrowthClass g) {
  for (auto& [k, v] : growth_class_names())
    if (k == g) return v;
  return "?";
}

// cut ~ a (bounded), a + b ln n (logarithmic), a n^alpha (power),
// a n^alpha ln n (power_times_log), a n / ln n, a n (linear).
struct GrowthModel {
  GrowthClass cls = GrowthClass::bounded;
  double a = 0.0;
  double b = 0.0;
  std::optional<double> alpha;
  double residual = std::numeric_limits<double>::infinity();  // mean squared error of ln(cut)
  int parameters = 1;

  double predict(double n) const {
    const double ln = std::log(n);
    switch (cls) {
      case GrowthClass::bounded: return a;
      case GrowthClass::logarithmic: return a + b * ln;
      case GrowthClass::power: return a * std::pow(n, *alpha);
      case GrowthClass::power_times_log: return a * std::pow(n, *alpha) * ln;
      case GrowthClass::n_over_log: return a * n / ln;
      case GrowthClass::linear: return a * n;
    }
    return 0.0;
  }
};

struct GrowthFit {
  GrowthModel best;
  GrowthModel runner_up;
  std::vector<GrowthModel> all;  // in class order
  std::size_t points = 0;
};

namespace detail {

// least squares y = p + q x
inline std::pair<double, double> line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double k = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = k * sxx - sx * sx;
  if (std::abs(den) < 1e-300) return {sy / k, 0.0};
  const double q = (k * sxy - sx * sy) / den;
  return {(sy - q * sx) / k, q};
}

inline double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return s / double(v.size());
}

}  // namespace detail

// Fits each class in its own linearising coordinates, then scores all of
// them by the mean squared error of ln(cut). Within 1e-9 the class with
// fewer parameters wins, then the earlier class.
inline GrowthFit fit_growth(const std::vector<std::pair<double, double>>& samples) {
  std::vector<double> n, cut;
  for (auto [x, y] : samples) {
    if (!(x > 1.0) || !(y > 0.0)) throw InputError("fit_growth needs n > 1 and cut > 0 at every point");
    n.push_back(x);
    cut.push_back(y);
  }
  if (n.size() < 4) throw InputError("fit_growth needs at least 4 points, got " + std::to_string(n.size()));
  const std::size_t k = n.size();
  std::vector<double> ln(k), lnln(k), lc(k);
  for (std::size_t i = 0; i < k; ++i) {
    ln[i] = std::log(n[i]);
    lnln[i] = std::log(ln[i]);
    lc[i] = std::log(cut[i]);
  }
  auto score = [&](GrowthModel& m) {
    double err = 0;
    for (std::size_t i = 0; i < k; ++i) {
      double p = m.predict(n[i]);
      if (!(p > 0.0) || !std::isfinite(p)) {
        m.residual = std::numeric_limits<double>::infinity();
        return;
      }
      double e = std::log(p) - lc[i];
      err += e * e;
    }
    m.residual = err / double(k);
  };
  // one-parameter multiplicative models: ln a = mean(ln cut - ln shape)
  auto scale_fit = [&](GrowthClass cls, auto shape) {
    GrowthModel m;
    m.cls = cls;
    m.parameters = 1;
    std::vector<double> d(k);
    for (std::size_t i = 0; i < k; ++i) d[i] = lc[i] - std::log(shape(n[i]));
    m.a = std::exp(detail::mean(d));
    score(m);
    return m;
  };
  std::vector<GrowthModel> all;
  all.push_back(scale_fit(GrowthClass::bounded, [](double) { return 1.0; }));
  {
    GrowthModel m;
    m.cls = GrowthClass::logarithmic;
    m.parameters = 2;
    auto [p, q] = detail::line_fit(ln, cut);
    m.a = p;
    m.b = q;
    score(m);
    all.push_back(m);
  }
  {
    GrowthModel m;
    m.cls = GrowthClass::power;
    m.parameters = 2;
    auto [p, q] = detail::line_fit(ln, lc);
    m.a = std::exp(p);
    m.alpha = q;
    score(m);
    all.push_back(m);
  }
  {
    GrowthModel m;
    m.cls = GrowthClass::power_times_log;
    m.parameters = 2;
    std::vector<double> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = lc[i] - lnln[i];
    auto [p, q] = detail::line_fit(ln, y);
    m.a = std::exp(p);
    m.alpha = q;
    score(m);
    all.push_back(m);
  }
  all.push_back(scale_fit(GrowthClass::n_over_log, [](double x) { return x / std::log(x); }));
  all.push_back(scale_fit(GrowthClass::linear, [](double x) { return x; }));

  auto better = [](const GrowthModel& p, const GrowthModel& q) {
    if (std::abs(p.residual - q.residual) > 1e-9) return p.residual < q.residual;
    if (p.parameters != q.parameters) return p.parameters < q.parameters;
    return int(p.cls) < int(q.cls);
  };
  std::vector<GrowthModel> ranked = all;
  std::stable_sort(ranked.begin(), ranked.end(), better);
  GrowthFit fit;
  fit.best = ranked[0];
  fit.runner_up = ranked[1];
  fit.all = all;
  fit.points = k;
  return fit;
}

inline GrowthFit fit_growth(const ProfileCurve& curve) {
  std::vector<std::pair<double, double>> samples;
  for (auto& p : curve.points) samples.emplace_back(double(p.n), double(p.cut));
  return fit_growth(samples);
}

}  // namespace seplab
