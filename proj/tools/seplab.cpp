#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "seplab/seplab.hpp"

using namespace seplab;
using nlohmann::json;

namespace {

enum class Format { text, json, csv };

struct Globals {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  Format format = Format::text;
};

// A path to a graph file, or a family spec such as grid:6:6.
Graph graph_arg(const std::string& s) {
  if (std::filesystem::exists(s)) return load_graph(s);
  try {
    return make_graph(FamilySpec::parse(s));
  } catch (const InputError& e) {
    throw InputError("'" + s + "' is neither a readable file nor a family (" + e.what() + ")");
  }
}

SolverOptions solver_options(const std::string& method, std::int64_t budget, const Globals& g) {
  SolverOptions o;
  if (method == "exhaustive") o.method = SolverMethod::exhaustive;
  else if (method == "bnb" || method == "branch_and_bound") o.method = SolverMethod::branch_and_bound;
  else if (method != "auto") throw InputError("solver method must be auto, exhaustive or bnb");
  if (budget > 0) o.budget = std::uint64_t(budget);
  o.threads = g.threads;
  return o;
}

std::string join(const VertexSet& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

void print_separator(const Separator& s, const Globals& g, const std::string& note = "") {
  switch (g.format) {
    case Format::json: std::cout << separator_json(s).dump() << '\n'; break;
    case Format::csv:
      std::cout << "c,size,max_component,certified_optimal,method,separator\n"
                << s.c.str() << ',' << s.size() << ',' << s.max_component << ','
                << (s.certified_optimal ? "true" : "false") << ',' << to_string(s.method) << ',' << join(s.vertices)
                << '\n';
      break;
    case Format::text:
      std::cout << "size " << s.size() << " (" << (s.certified_optimal ? "optimal" : "upper bound") << ", "
                << to_string(s.method) << ")\nmax component " << s.max_component << " at c = " << s.c.str()
                << "\nseparator " << join(s.vertices) << '\n';
      if (!note.empty()) std::cout << note << '\n';
  }
}

void print_fit(const GrowthFit& f, const Globals& g) {
  auto model = [](const GrowthModel& m) {
    json j{{"class", to_string(m.cls)}, {"residual", m.residual}, {"a", m.a}};
    if (m.alpha) j["alpha"] = *m.alpha;
    if (m.cls == GrowthClass::logarithmic) j["b"] = m.b;
    return j;
  };
  if (g.format == Format::json) {
    std::cout << json{{"best", model(f.best)}, {"runner_up", model(f.runner_up)}, {"points", f.points}}.dump() << '\n';
    return;
  }
  if (g.format == Format::csv) {
    std::cout << "class,alpha,residual\n";
    for (auto& m : f.all)
      std::cout << to_string(m.cls) << ',' << (m.alpha ? std::to_string(*m.alpha) : "") << ',' << m.residual << '\n';
    return;
  }
  std::cout << "best " << to_string(f.best.cls);
  if (f.best.alpha) std::cout << " alpha=" << *f.best.alpha;
  std::cout << " residual=" << f.best.residual << "\nrunner-up " << to_string(f.runner_up.cls);
  if (f.runner_up.alpha) std::cout << " alpha=" << *f.runner_up.alpha;
  std::cout << " residual=" << f.runner_up.residual << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::vector<std::int64_t> level_values(const std::string& fn, std::size_t n) {
  std::vector<std::int64_t> v(n * n);
  const auto c = std::int64_t(n / 2);
  for (std::int64_t y = 0; y < std::int64_t(n); ++y)
    for (std::int64_t x = 0; x < std::int64_t(n); ++x) {
      std::int64_t val = 0;
      if (fn == "x") val = x;
      else if (fn == "diag") val = (x + y) / 2;
      else if (fn == "linf") val = std::max(std::llabs(x - c), std::llabs(y - c));
      else if (fn == "l1") val = (std::llabs(x - c) + std::llabs(y - c)) / 2;
      else if (fn != "zero") throw InputError("unknown level function '" + fn + "' (x, diag, linf, l1, zero)");
      v[std::size_t(x + std::int64_t(n) * y)] = val;
    }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"seplab: balanced separators and separation profiles"};
  app.require_subcommand(1);
  Globals glob;
  std::string format = "text";
  app.add_option("--seed", glob.seed, "random seed");
  app.add_option("--threads", glob.threads, "worker threads (default: SEPLAB_THREADS or all cores)");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "text"}));

  // generate
  auto* gen = app.add_subcommand("generate", "write a family instance as a graph file");
  std::string gen_family, gen_out;
  gen->add_option("family", gen_family, "family spec, e.g. grid:5:5 or hyperbolic_tiling_ball:4:5:3")->required();
  gen->add_option("-o,--out", gen_out, "output file (default stdout)");

  // cut
  auto* cut = app.add_subcommand("cut", "exact minimum balanced separator");
  std::string cut_graph, cut_c = "1/2", cut_method = "auto";
  std::int64_t cut_budget = 0;
  cut->add_option("graph", cut_graph, "graph file or family spec")->required();
  cut->add_option("-c", cut_c, "balance p/q");
  cut->add_option("--method", cut_method, "auto, exhaustive or bnb");
  cut->add_option("--budget", cut_budget, "search node budget (result uncertified when exceeded)");
  bool cut_refine = false;
  cut->add_flag("--refine", cut_refine, "iterated halving instead of a direct search when c < 1/2");

  // tw
  auto* tw = app.add_subcommand("tw", "exact treewidth and a bag separator");
  std::string tw_graph;
  tw->add_option("graph", tw_graph)->required();

  // separate
  auto* sep = app.add_subcommand("separate", "constructive separator");
  std::string sep_graph, sep_method;
  double sep_tau = 1.0;
  int sep_trials = 64;
  sep->add_option("graph", sep_graph)->required();
  sep->add_option("--method", sep_method, "ttree, hyperplane or bag")
      ->required()
      ->check(CLI::IsMember({"ttree", "hyperplane", "bag"}));
  sep->add_option("--tau", sep_tau, "ttree threshold factor");
  sep->add_option("--trials", sep_trials, "hyperplane angles to try");

  // product-bound
  auto* prod = app.add_subcommand("product-bound", "compare cut(GxH) with the product bounds");
  std::string prod_g, prod_h;
  prod->add_option("first", prod_g, "graph file or family spec")->required();
  prod->add_option("second", prod_h, "graph file or family spec")->required();

  // profile
  auto* prof = app.add_subcommand("profile", "cut sizes over a family sweep");
  std::string prof_family, prof_method = "exact", prof_c = "1/2", prof_out, prof_plot;
  std::int64_t prof_from = 0, prof_to = 0, prof_budget = 0;
  bool prof_fit = false;
  prof->add_option("family", prof_family, "family without the swept parameter, e.g. grid:2, binary_tree")->required();
  prof->add_option("--from", prof_from)->required();
  prof->add_option("--to", prof_to)->required();
  prof->add_option("--method", prof_method, "exact or constructive:<ttree|hyperplane|bag>");
  prof->add_option("-c", prof_c, "balance p/q for exact points");
  prof->add_option("--budget", prof_budget, "search node budget per point");
  prof->add_option("--out", prof_out, "also write the CSV here");
  prof->add_option("--plot", prof_plot, "write an SVG plot");
  prof->add_flag("--fit", prof_fit, "fit a growth class");

  // fit
  auto* fit = app.add_subcommand("fit", "growth class of a profile CSV");
  std::string fit_csv, fit_plot;
  fit->add_option("csv", fit_csv)->required();
  fit->add_option("--plot", fit_plot, "write an SVG plot");

  // delta
  auto* del = app.add_subcommand("delta", "hyperbolicity constant");
  std::string del_graph, del_method = "four_point";
  del->add_option("graph", del_graph)->required();
  del->add_option("--method", del_method)->check(CLI::IsMember({"four_point", "thin_triangles", "both"}));

  // quotient
  auto* quo = app.add_subcommand("quotient", "tree quotient from sphere classes");
  std::string quo_graph;
  int quo_delta = 0;
  Vertex quo_root = 0;
  bool quo_auto = false;
  quo->add_option("graph", quo_graph)->required();
  quo->add_option("--delta", quo_delta, "class radius");
  quo->add_flag("--auto-delta", quo_auto, "use the ceiling of the four-point constant");
  quo->add_option("--root", quo_root);

  // verify-map
  auto* vm = app.add_subcommand("verify-map", "regularity of a map file");
  std::string vm_file, vm_radii;
  int vm_kappa = 0;
  bool vm_closed = false;
  vm->add_option("map", vm_file)->required();
  vm->add_option("--kappa", vm_kappa, "check kappa-regularity");
  vm->add_option("--semi", vm_radii, "comma-separated radii for the c(r) table");
  vm->add_flag("--closed", vm_closed, "closed balls in the c(r) table");

  // levelsets
  auto* lv = app.add_subcommand("levelsets", "quasi-level sets on an n x n box");
  std::size_t lv_n = 32;
  std::int64_t lv_k = 4;
  std::string lv_fn = "x";
  lv->add_option("--n", lv_n);
  lv->add_option("--k", lv_k);
  lv->add_option("--g", lv_fn, "x, diag, linf, l1 or zero");

  // asdim
  auto* ad = app.add_subcommand("asdim", "check the brick coloring of a box");
  std::uint32_t ad_w = 12, ad_h = 12;
  int ad_s = 3;
  ad->add_option("--width", ad_w);
  ad->add_option("--height", ad_h);
  ad->add_option("--s", ad_s);

  CLI11_PARSE(app, argc, argv);
  glob.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  if (glob.threads > 0) set_default_threads(glob.threads);

  try {
    if (*gen) {
      Graph g = make_graph(FamilySpec::parse(gen_family));
      if (gen_out.empty()) write_graph(std::cout, g);
      else save_graph(gen_out, g);
    } else if (*cut) {
      Graph g = graph_arg(cut_graph);
      auto opts = solver_options(cut_method, cut_budget, glob);
      Rational c = Rational::parse(cut_c);
      Separator s = cut_refine ? refine_to_c(g, Balance(c), opts) : min_balanced_separator(g, Balance(c), opts);
      print_separator(s, glob);
    } else if (*tw) {
      Graph g = graph_arg(tw_graph);
      auto r = treewidth_exact(g);
      auto s = bag_separator(g, tree_decomposition_from_order(g, r.elimination_order));
      if (glob.format == Format::json) {
        std::cout << json{{"treewidth", r.width}, {"elimination_order", r.elimination_order},
                          {"bag_separator", separator_json(s)}}
                         .dump()
                  << '\n';
      } else {
        std::cout << "treewidth " << r.width << "\norder";
        for (Vertex v : r.elimination_order) std::cout << ' ' << v;
        std::cout << "\nbag separator size " << s.size() << " (cut <= tw + 1 = " << r.width + 1 << ")\n";
      }
    } else if (*sep) {
      Graph g = graph_arg(sep_graph);
      if (sep_method == "ttree") {
        auto r = ttree_median_separator(g, sep_tau);
        std::ostringstream note;
        note << "threshold " << r.threshold << ", medians " << r.m1 << ' ' << r.m2
             << (r.fallback ? ", extra levels added" : "");
        print_separator(r.separator, glob, note.str());
      } else if (sep_method == "hyperplane") {
        auto r = hyperplane_separator(g, sep_trials, glob.seed, glob.threads);
        print_separator(r.separator, glob, "angle " + std::to_string(r.angle) + " (trial " + std::to_string(r.trial) + ")");
      } else {
        auto r = treewidth_exact(g);
        print_separator(bag_separator(g, tree_decomposition_from_order(g, r.elimination_order)), glob);
      }
    } else if (*prod) {
      Graph g = graph_arg(prod_g), h = graph_arg(prod_h);
      SolverOptions o;
      o.threads = glob.threads;
      auto r = product_bound_report(g, h, o);
      json j{{"cut_product", r.cut_product.size()}, {"cut_c_g", r.cut_c_g.size()}, {"cut_c_h", r.cut_c_h.size()},
             {"lhs_g", r.lhs_g}, {"lhs_h", r.lhs_h}, {"ratio_g", r.ratio_g}, {"ratio_h", r.ratio_h},
             {"ratio_min", r.ratio_min}, {"upper", r.upper}, {"upper_holds", r.upper_holds},
             {"certified", r.certified}, {"c", r.c.str()}};
      if (glob.format == Format::json) std::cout << j.dump() << '\n';
      else std::cout << j.dump(2) << '\n';
    } else if (*prof) {
      ProfileOptions po;
      po.c = Rational::parse(prof_c);
      po.method = ProfileMethod::parse(prof_method);
      po.seed = glob.seed;
      po.threads = glob.threads;
      if (prof_budget > 0) po.budget = std::uint64_t(prof_budget);
      auto curve = run_profile(FamilySpec::parse(prof_family), prof_from, prof_to, po);
      if (curve.truncation) std::cerr << "truncated: " << *curve.truncation << '\n';
      std::optional<GrowthFit> f;
      if ((prof_fit || !prof_plot.empty()) && curve.points.size() >= 4) f = fit_growth(curve);
      if (!prof_out.empty()) {
        std::ofstream out(prof_out);
        write_curve_csv(out, curve);
      }
      if (glob.format == Format::text) {
        std::cout << "param      n    cut  bound  method\n";
        for (auto& p : curve.points) {
          char buf[160];
          std::snprintf(buf, sizeof buf, "%5lld %6zu %6zu  %-5s  %s\n", (long long)p.param, p.n, p.cut,
                        bound_kind(p).c_str(), p.method.c_str());
          std::cout << buf;
        }
      } else if (glob.format == Format::csv) {
        write_curve_csv(std::cout, curve);
      } else {
        json pts = json::array();
        for (auto& p : curve.points)
          pts.push_back({{"param", p.param}, {"n", p.n}, {"cut", p.cut}, {"method", p.method},
                         {"certified", p.certified}, {"bound", bound_kind(p)}});
        json j{{"family", curve.family.str()}, {"points", pts}};
        if (curve.truncation) j["truncation"] = *curve.truncation;
        std::cout << j.dump() << '\n';
      }
      if (prof_fit && f && glob.format == Format::text) print_fit(*f, glob);
      if (!prof_plot.empty()) write_text(prof_plot, plot_svg(curve, f));
    } else if (*fit) {
      std::ifstream in(fit_csv);
      if (!in) throw InputError("cannot open " + fit_csv);
      auto curve = read_curve_csv(in);
      auto f = fit_growth(curve);
      print_fit(f, glob);
      if (!fit_plot.empty()) write_text(fit_plot, plot_svg(curve, f));
    } else if (*del) {
      Graph g = graph_arg(del_graph);
      json j;
      if (del_method != "thin_triangles") j["four_point"] = hyperbolicity_delta(g, DeltaMethod::four_point).str();
      if (del_method != "four_point") j["thin_triangles"] = hyperbolicity_delta(g, DeltaMethod::thin_triangles).str();
      if (glob.format == Format::json) std::cout << j.dump() << '\n';
      else
        for (auto& [k, v] : j.items()) std::cout << k << ' ' << v.get<std::string>() << '\n';
    } else if (*quo) {
      Graph g = graph_arg(quo_graph);
      int d = quo_delta;
      if (quo_auto) {
        auto r = hyperbolicity_delta(g);
        d = int((r.num() + r.den() - 1) / r.den());
      }
      auto q = quotient_tree(g, quo_root, d);
      json j{{"delta", q.delta}, {"level_spacing", q.level_spacing}, {"classes", q.classes.size()},
             {"tree_edges", q.tree.num_edges()}, {"is_tree", q.is_tree}, {"unique_down", q.unique_down},
             {"levels_consistent", q.levels_consistent},
             {"max_class_diameter",
              q.class_diameters.empty() ? 0 : *std::max_element(q.class_diameters.begin(), q.class_diameters.end())}};
      if (glob.format == Format::json) std::cout << j.dump() << '\n';
      else std::cout << j.dump(2) << '\n';
    } else if (*vm) {
      auto m = load_map(vm_file);
      json j;
      if (vm_kappa > 0) {
        auto r = verify_regular(m, vm_kappa);
        j["regular"] = {{"kappa", r.kappa}, {"condition1", r.condition1}, {"condition2", r.condition2},
                        {"regular", r.regular}, {"kappa_lipschitz", r.kappa_lipschitz},
                        {"greedy_cover", r.greedy_cover}};
        if (r.kappa_cover) j["regular"]["kappa_cover"] = *r.kappa_cover;
      }
      if (!vm_radii.empty()) {
        std::vector<int> radii;
        std::stringstream ss(vm_radii);
        for (std::string t; std::getline(ss, t, ',');) radii.push_back(std::stoi(t));
        auto t = verify_semi_regular(m, radii, vm_closed ? BallKind::closed : BallKind::open);
        json rows = json::array();
        for (auto& e : t.entries) rows.push_back({{"r", e.r}, {"c", e.c}});
        j["semi_regular"] = {{"lipschitz", t.lipschitz}, {"balls", vm_closed ? "closed" : "open"}, {"table", rows}};
      }
      if (vm_kappa <= 0 && vm_radii.empty()) {
        auto d = map_distortion(m);
        j["distortion"] = {{"multiplicative", d.multiplicative}, {"additive", d.additive},
                           {"rough_kappa", d.rough_kappa}, {"pairs", d.pairs}};
      }
      std::cout << (glob.format == Format::json ? j.dump() : j.dump(2)) << '\n';
    } else if (*lv) {
      auto r = quasi_level_components(lv_n, level_values(lv_fn, lv_n), lv_k);
      json sizes = json::array();
      for (auto& c : r.components) sizes.push_back({{"level", c.level}, {"size", c.cells.size()}});
      json j{{"components", sizes}, {"chain_sizes", r.chain_sizes}, {"stop", to_string(r.stop)},
             {"levels_separated", r.levels_separated}};
      std::cout << (glob.format == Format::json ? j.dump() : j.dump(2)) << '\n';
    } else if (*ad) {
      auto sc = brick_coloring(ad_w, ad_h, ad_s);
      auto r = verify_asdim_coloring(grid({ad_w, ad_h}), sc);
      json j{{"valid", r.valid}, {"pieces", r.pieces}, {"worst_diameter", r.worst_diameter},
             {"min_distance", r.min_distance}, {"D", sc.D}, {"B", sc.B}, {"s", sc.s}};
      if (!r.valid) j["problem"] = r.problem;
      std::cout << (glob.format == Format::json ? j.dump() : j.dump(2)) << '\n';
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const SearchError& e) {
    std::cerr << "search error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
