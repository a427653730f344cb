#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "profile.hpp"
#include "separator.hpp"

namespace seplab {

// Graph text format:
//   # comment lines anywhere
//   n m
//   u v            (m lines, u < v)
//   c u x y        (optional coordinates, all or none)
//   l u text       (optional labels, all or none; text runs to end of line)
inline void write_graph(std::ostream& out, const Graph& g) {
  out << g.size() << ' ' << g.num_edges() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  if (g.has_coords()) {
    char buf[96];
    for (Vertex v = 0; v < g.size(); ++v) {
      std::snprintf(buf, sizeof buf, "c %u %.17g %.17g\n", v, g.coords()[v].x, g.coords()[v].y);
      out << buf;
    }
  }
  if (g.has_labels())
    for (Vertex v = 0; v < g.size(); ++v) out << "l " << v << ' ' << g.labels()[v] << '\n';
}

inline Graph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& why) {
    throw InputError("graph file line " + std::to_string(lineno) + ": " + why);
  };
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next()) throw InputError("graph file is empty");
  std::size_t n = 0, m = 0;
  {
    std::istringstream ss(line);
    std::string extra;
    if (!(ss >> n >> m) || (ss >> extra)) fail("expected header 'n m'");
  }
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (std::size_t i = 0; i < m; ++i) {
    if (!next()) fail("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    std::istringstream ss(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(ss >> u >> v) || (ss >> extra)) fail("expected edge 'u v'");
    if (u < 0 || v < 0 || std::size_t(v) >= n || u >= v) fail("edge must satisfy 0 <= u < v < n");
    edges.emplace_back(Vertex(u), Vertex(v));
  }
  Graph g = Graph::from_edges(n, edges);
  if (g.num_edges() != m) fail("duplicate edges");
  std::vector<Point> coords(n);
  std::vector<std::string> labels(n);
  std::vector<char> has_c(n, 0), has_l(n, 0);
  std::size_t nc = 0, nl = 0;
  while (next()) {
    std::istringstream ss(line);
    std::string tag;
    long long u = -1;
    ss >> tag >> u;
    if (u < 0 || std::size_t(u) >= n) fail("vertex out of range");
    if (tag == "c") {
      std::string xs, ys, extra;
      if (!(ss >> xs >> ys) || (ss >> extra)) fail("expected 'c u x y'");
      try {
        coords[u] = {std::stod(xs), std::stod(ys)};
      } catch (const std::logic_error&) {
        fail("bad coordinate");
      }
      if (has_c[u]++) fail("vertex has two coordinate lines");
      ++nc;
    } else if (tag == "l") {
      std::string rest;
      std::getline(ss, rest);
      if (!rest.empty() && rest[0] == ' ') rest.erase(0, 1);
      labels[u] = rest;
      if (has_l[u]++) fail("vertex has two label lines");
      ++nl;
    } else {
      fail("unknown line '" + tag + "'");
    }
  }
  if (nc != 0 && nc != n) throw InputError("graph file gives coordinates for some vertices only");
  if (nl != 0 && nl != n) throw InputError("graph file gives labels for some vertices only");
  if (nc) g.set_coords(std::move(coords));
  if (nl) g.set_labels(std::move(labels));
  return g;
}

inline Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return read_graph(in);
}

inline void save_graph(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  write_graph(out, g);
}

// Map file: header "src.graph dst.graph" (relative to the map file), then
// one "u v" line per source vertex.
inline GraphMap load_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  std::string line;
  auto next = [&]() {
    while (std::getline(in, line)) {
      auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next()) throw InputError("map file is empty");
  std::istringstream hs(line);
  std::string src, dst;
  if (!(hs >> src >> dst)) throw InputError("map file header must be 'src.graph dst.graph'");
  const auto dir = path.parent_path();
  Graph s = load_graph(dir / src), t = load_graph(dir / dst);
  std::vector<Vertex> image(s.size());
  std::vector<char> seen(s.size(), 0);
  std::size_t count = 0;
  while (next()) {
    std::istringstream ss(line);
    long long u = -1, v = -1;
    if (!(ss >> u >> v) || u < 0 || v < 0 || std::size_t(u) >= s.size())
      throw InputError("bad map line '" + line + "'");
    if (seen[u]++) throw InputError("vertex " + std::to_string(u) + " mapped twice");
    image[u] = Vertex(v);
    ++count;
  }
  if (count != s.size()) throw InputError("map is not total");
  return GraphMap(std::move(s), std::move(t), std::move(image));
}

inline void save_map(const std::filesystem::path& path, const GraphMap& m, const std::string& src_name,
                     const std::string& dst_name) {
  const auto dir = path.parent_path();
  save_graph(dir / src_name, m.source);
  save_graph(dir / dst_name, m.target);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path.string());
  out << src_name << ' ' << dst_name << '\n';
  for (Vertex u = 0; u < m.source.size(); ++u) out << u << ' ' << m.image[u] << '\n';
}

inline const char* kCurveHeader = "family,param,n,cut,method,certified";

inline void write_curve_csv(std::ostream& out, const ProfileCurve& c) {
  out << kCurveHeader << '\n';
  for (auto& p : c.points)
    out << c.family.str() << ',' << p.param << ',' << p.n << ',' << p.cut << ',' << p.method << ','
        << (p.certified ? "true" : "false") << '\n';
}

inline ProfileCurve read_curve_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("profile CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCurveHeader) throw InputError(std::string("profile CSV header must be '") + kCurveHeader + "'");
  ProfileCurve c;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    if (f.size() != 6) throw InputError("profile CSV row needs 6 fields: '" + line + "'");
    auto fam = FamilySpec::parse(f[0]);
    if (first) c.family = fam;
    else if (fam.str() != c.family.str()) throw InputError("profile CSV mixes families");
    first = false;
    ProfilePoint p;
    try {
      p.param = std::stoll(f[1]);
      p.n = std::stoull(f[2]);
      p.cut = std::stoull(f[3]);
    } catch (const std::logic_error&) {
      throw InputError("bad number in profile CSV row '" + line + "'");
    }
    p.method = f[4];
    if (f[5] != "true" && f[5] != "false") throw InputError("certified must be true or false");
    p.certified = f[5] == "true";
    if (!c.points.empty() && (p.param <= c.points.back().param || p.n <= c.points.back().n))
      throw InputError("profile CSV rows must have increasing param and n");
    c.points.push_back(p);
  }
  return c;
}

inline nlohmann::json separator_json(const Separator& s) {
  return nlohmann::json{{"c", s.c.str()},
                        {"separator", s.vertices.ids()},
                        {"size", s.size()},
                        {"max_component", s.max_component},
                        {"certified_optimal", s.certified_optimal},
                        {"method", to_string(s.method)}};
}

// Cut against n, points and the fitted curve, log-log axes.
inline std::string plot_svg(const ProfileCurve& curve, const std::optional<GrowthFit>& fit) {
  const double W = 640, H = 420, L = 60, R = 20, T = 30, Bm = 50;
  double nmin = 1e300, nmax = 0, cmin = 1e300, cmax = 0;
  for (auto& p : curve.points) {
    nmin = std::min(nmin, double(std::max<std::size_t>(p.n, 1)));
    nmax = std::max(nmax, double(p.n));
    cmin = std::min(cmin, double(std::max<std::size_t>(p.cut, 1)));
    cmax = std::max(cmax, double(p.cut));
  }
  if (curve.points.empty()) nmin = cmin = 1, nmax = cmax = 10;
  if (nmax <= nmin) nmax = nmin * 10;
  if (cmax <= cmin) cmax = cmin * 10;
  const double lx0 = std::log10(nmin), lx1 = std::log10(nmax);
  const double ly0 = std::log10(cmin) - 0.1, ly1 = std::log10(cmax) + 0.1;
  auto px = [&](double n) { return L + (std::log10(n) - lx0) / (lx1 - lx0) * (W - L - R); };
  auto py = [&](double c) { return H - Bm - (std::log10(c) - ly0) / (ly1 - ly0) * (H - T - Bm); };
  std::ostringstream s;
  s << std::fixed << std::setprecision(2);
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - Bm << "\" x2=\"" << W - R << "\" y2=\"" << H - Bm
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - Bm << "\" stroke=\"black\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">n (log)</text>\n";
  s << "<text x=\"14\" y=\"" << H / 2 << "\" transform=\"rotate(-90 14 " << H / 2
    << ")\" text-anchor=\"middle\">cut (log)</text>\n";
  s << "<text x=\"" << L << "\" y=\"20\">" << curve.family.str() << "</text>\n";
  if (fit && !curve.points.empty()) {
    s << "<polyline fill=\"none\" stroke=\"steelblue\" points=\"";
    for (int i = 0; i <= 100; ++i) {
      double n = std::pow(10.0, lx0 + (lx1 - lx0) * i / 100.0);
      double c = fit->best.predict(n);
      if (c > 0 && n > 1) s << px(n) << ',' << std::clamp(py(c), 0.0, H) << ' ';
    }
    s << "\"/>\n";
    s << "<text x=\"" << W - R << "\" y=\"20\" text-anchor=\"end\">fit: " << to_string(fit->best.cls);
    if (fit->best.alpha) s << " alpha=" << *fit->best.alpha;
    s << "</text>\n";
  }
  for (auto& p : curve.points)
    s << "<circle cx=\"" << px(double(std::max<std::size_t>(p.n, 1))) << "\" cy=\""
      << py(double(std::max<std::size_t>(p.cut, 1))) << "\" r=\"4\" fill=\"" << (p.certified ? "black" : "white")
      << "\" stroke=\"black\"/>\n";
  s << "</svg>\n";
  return s.str();
}

}  // namespace seplab
