#include "penrose/shell.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace penrose {

namespace {

const char* kLayerNames[] = {"gridlines", "rhombs", "wangids", "tetragons", "strip-overlay"};

// Ten pair colors: thick rhombs (|i-j| in {1,4}) warm, thin ones cool.
const char* kPairColors[5][5] = {
    {"", "#f4a261", "#8ecae6", "#a8dadc", "#e76f51"},
    {"", "", "#e9c46a", "#219ebc", "#b5e48c"},
    {"", "", "", "#f6bd60", "#90be6d"},
    {"", "", "", "", "#ee9b00"},
    {"", "", "", "", ""},
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

// Maps tiling coordinates to pixels, y pointing down.
struct View {
  double x0, y0, x1, y1, scale;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return (y1 - y) * scale; }
  double width() const { return (x1 - x0) * scale; }
  double height() const { return (y1 - y0) * scale; }
  std::string point(const XY& p) const { return fmt(px(p.x)) + "," + fmt(py(p.y)); }
};

View view_of(const Window& w, double scale) {
  if (!(w.p0 < w.p1) || !(w.q0 < w.q1)) throw SceneError("empty window");
  View v{INFINITY, INFINITY, -INFINITY, -INFINITY, scale};
  for (const PointV& c : w.region().vertices) {
    XY p = to_cartesian(c);
    v.x0 = std::min(v.x0, p.x);
    v.x1 = std::max(v.x1, p.x);
    v.y0 = std::min(v.y0, p.y);
    v.y1 = std::max(v.y1, p.y);
  }
  return v;
}

std::string polygon(const View& v, const std::vector<XY>& pts, const std::string& fill, double stroke,
                    const std::string& extra = "") {
  std::string s = "<polygon points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) s += (k ? " " : "") + v.point(pts[k]);
  s += "\" fill=\"" + fill + "\" stroke=\"#333\" stroke-width=\"" + fmt(stroke) + "\"" + extra + "/>\n";
  return s;
}

std::vector<XY> cart(const std::vector<PointV>& pts) {
  std::vector<XY> out;
  for (const PointV& p : pts) out.push_back(to_cartesian(p));
  return out;
}

std::string rhomb_layer(const View& v, const SceneData& d, const Style& st) {
  std::string s = "<g class=\"rhombs\">\n";
  for (const RhombTile& t : d.tiles) {
    auto vs = t.ccw_vertices();
    std::string fill = kPairColors[t.i][t.j];
    if (t.origin != TileOrigin::Dual) fill = t.origin == TileOrigin::WormFill ? "#d62828" : "#6a4c93";
    s += polygon(v, cart({vs.begin(), vs.end()}), fill, st.stroke,
                 " data-family=\"" + std::to_string(t.i) + std::to_string(t.j) + "\"");
  }
  for (const PolygonDual& p : d.open)
    if (p.kind != PolygonKind::Rhomb) s += polygon(v, cart(p.vertices), "#ffffff", st.stroke * 2, " data-open=\"1\"");
  return s + "</g>\n";
}

std::string grid_layer(const View& v, const Window& w, const PentagridParams& u, const Style& st) {
  std::string s = "<g class=\"gridlines\" stroke=\"#555\" stroke-width=\"" + fmt(st.stroke * 0.5) + "\">\n";
  const auto& corners = w.region().vertices;
  for (int j = 0; j < 5; ++j) {
    Qr5 lo = dot_family(j, corners[0]) + u[j], hi = lo;
    for (const PointV& c : corners) {
      Qr5 val = dot_family(j, c) + u[j];
      lo = std::min(lo, val);
      hi = std::max(hi, val);
    }
    XY e = to_cartesian(basis_vector(j));
    XY t{-e.y, e.x};
    for (long long k = lo.ceil(); k <= hi.floor(); ++k) {
      // e . X = k - u_j; clip the line to the view box
      double c = static_cast<double>(k) - u[j].to_double();
      XY o{c * e.x, c * e.y};
      double tmin = -INFINITY, tmax = INFINITY;
      auto slab = [&](double o1, double d1, double a, double b) {
        if (std::abs(d1) < 1e-12) {
          if (o1 < a || o1 > b) tmin = INFINITY;
          return;
        }
        double t1 = (a - o1) / d1, t2 = (b - o1) / d1;
        tmin = std::max(tmin, std::min(t1, t2));
        tmax = std::min(tmax, std::max(t1, t2));
      };
      slab(o.x, t.x, v.x0, v.x1);
      slab(o.y, t.y, v.y0, v.y1);
      if (!(tmin < tmax)) continue;
      XY a{o.x + tmin * t.x, o.y + tmin * t.y}, b{o.x + tmax * t.x, o.y + tmax * t.y};
      s += "<line x1=\"" + fmt(v.px(a.x)) + "\" y1=\"" + fmt(v.py(a.y)) + "\" x2=\"" + fmt(v.px(b.x)) + "\" y2=\"" +
           fmt(v.py(b.y)) + "\" data-line=\"" + std::to_string(j) + "," + std::to_string(k) + "\"/>\n";
    }
  }
  return s + "</g>\n";
}

std::vector<XY> tetragon_corners(const PentagridParams& u, long long n0, long long n1) {
  return cart({corner_dual(u, {n0, n1}), corner_dual(u, {n0 + 1, n1}), corner_dual(u, {n0 + 1, n1 + 1}),
               corner_dual(u, {n0, n1 + 1})});
}

std::string field_layer(const View& v, const SceneData& d, const Style& st, bool labels) {
  if (!d.field || !d.field_params) throw SceneError(labels ? "wangids layer needs a Wang field" : "tetragons layer needs a Wang field");
  const WangField& f = *d.field;
  std::string s = std::string("<g class=\"") + (labels ? "wangids" : "tetragons") + "\">\n";
  for (int r = 0; r < f.height; ++r)
    for (int c = 0; c < f.width; ++c) {
      long long n0 = f.lo[0] + c, n1 = f.lo[1] + r;
      int id = f.at(n0, n1);
      std::vector<XY> q = tetragon_corners(*d.field_params, n0, n1);
      if (!labels) {
        s += polygon(v, q, wang_color(id), st.stroke, " fill-opacity=\"0.55\" data-id=\"" + std::to_string(id) + "\"");
        continue;
      }
      double cx = 0, cy = 0;
      for (const XY& p : q) {
        cx += p.x / 4;
        cy += p.y / 4;
      }
      s += "<text x=\"" + fmt(v.px(cx)) + "\" y=\"" + fmt(v.py(cy)) + "\" font-size=\"" + fmt(st.scale * 0.35) +
           "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" + std::to_string(id) + "</text>\n";
    }
  return s + "</g>\n";
}

std::string strip_layer(const View& v, const Strip& strip, const Style& st) {
  XY g = to_cartesian(strip.direction.generator);
  double n = std::hypot(g.x, g.y);
  XY e{g.x / n, g.y / n}, w{-e.y, e.x};
  double r = strip.r.to_double(), L = strip.L.to_double();
  std::vector<XY> q = {{-L * e.x - r * w.x, -L * e.y - r * w.y},
                       {L * e.x - r * w.x, L * e.y - r * w.y},
                       {L * e.x + r * w.x, L * e.y + r * w.y},
                       {-L * e.x + r * w.x, -L * e.y + r * w.y}};
  return "<g class=\"strip-overlay\">\n" +
         polygon(v, q, "#1d3557", st.stroke * 2, " fill-opacity=\"0.15\" stroke-dasharray=\"4 3\"") + "</g>\n";
}

std::string body(const SceneSpec& scene, const SceneData& data, const View& v) {
  std::string s;
  for (Layer l : scene.layers) switch (l) {
      case Layer::Gridlines:
        if (!data.grid) throw SceneError("gridlines layer needs grid parameters");
        s += grid_layer(v, scene.window, *data.grid, scene.style);
        break;
      case Layer::Rhombs:
        s += rhomb_layer(v, data, scene.style);
        break;
      case Layer::WangIds:
        s += field_layer(v, data, scene.style, true);
        break;
      case Layer::Tetragons:
        s += field_layer(v, data, scene.style, false);
        break;
      case Layer::StripOverlay:
        if (!data.strip) throw SceneError("strip-overlay layer needs a strip");
        s += strip_layer(v, *data.strip, scene.style);
        break;
    }
  return s;
}

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(w) + "\" height=\"" + fmt(h) +
         "\" viewBox=\"0 0 " + fmt(w) + " " + fmt(h) + "\">\n";
}

}  // namespace

std::optional<Layer> parse_layer(std::string_view name) {
  for (int k = 0; k < 5; ++k)
    if (name == kLayerNames[k]) return static_cast<Layer>(k);
  return std::nullopt;
}

const char* layer_name(Layer l) { return kLayerNames[static_cast<int>(l)]; }

const char* family_color(int i, int j) {
  if (i > j) std::swap(i, j);
  return kPairColors[i][j];
}

std::string wang_color(int id) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "hsl(%d,65%%,%d%%)", (id * 47) % 360, id % 2 ? 62 : 74);
  return buf;
}

std::string render_svg(const SceneSpec& scene, const SceneData& data) {
  View v = view_of(scene.window, scene.style.scale);
  std::string s = header(v.width(), v.height());
  s += "<defs><clipPath id=\"win\"><rect x=\"0\" y=\"0\" width=\"" + fmt(v.width()) + "\" height=\"" +
       fmt(v.height()) + "\"/></clipPath></defs>\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"#fdfcf7\"/>\n<g clip-path=\"url(#win)\">\n";
  s += body(scene, data, v);
  return s + "</g>\n</svg>\n";
}

std::string render_worm_triptych(const PentagridParams& u, const Window& w, const Style& style) {
  View v = view_of(w, style.scale);
  double gap = 20;
  std::string s = header(3 * v.width() + 2 * gap, v.height() + 30);
  s += "<rect width=\"100%\" height=\"100%\" fill=\"#fdfcf7\"/>\n";
  SceneSpec scene{{Layer::Rhombs}, w, style};
  const char* titles[3] = {"unfilled", "+", "-"};
  for (int panel = 0; panel < 3; ++panel) {
    SceneData d;
    if (panel == 0) {
      for (const PolygonDual& p : dual_patch(u, w.shrunk(Qr5(-kMaterializeMargin)))) {
        if (p.kind == PolygonKind::Rhomb)
          d.tiles.push_back(dual_rhomb(p.code, u));
        else
          d.open.push_back(p);
      }
    } else {
      d.tiles = materialize(PenroseTiling{u, WormFill{panel == 1 ? 1 : -1}, {}}, w);
    }
    double ox = panel * (v.width() + gap);
    s += "<clipPath id=\"p" + std::to_string(panel) + "\"><rect x=\"0\" y=\"0\" width=\"" + fmt(v.width()) +
         "\" height=\"" + fmt(v.height()) + "\"/></clipPath>\n";
    s += "<g transform=\"translate(" + fmt(ox) + ",30)\">\n<text x=\"" + fmt(v.width() / 2) +
         "\" y=\"-10\" text-anchor=\"middle\" font-size=\"16\">" + titles[panel] + "</text>\n<g clip-path=\"url(#p" +
         std::to_string(panel) + ")\">\n";
    s += body(scene, d, v);
    s += "</g>\n</g>\n";
  }
  return s + "</svg>\n";
}

nlohmann::json tile_json(const RhombTile& t) {
  nlohmann::json verts = nlohmann::json::array();
  for (const PointV& p : t.ccw_vertices()) {
    XY c = to_cartesian(p);
    verts.push_back({c.x, c.y});
  }
  std::string origin = t.origin == TileOrigin::Dual ? "dual" : t.origin == TileOrigin::WormFill ? "wormfill" : "cartwheelfill";
  return {{"family", {t.i, t.j}}, {"vertices", verts}, {"origin", origin}};
}

nlohmann::json tiles_json(const std::vector<RhombTile>& tiles) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RhombTile& t : tiles) arr.push_back(tile_json(t));
  return {{"schema", kSchema}, {"tiles", arr}};
}

nlohmann::json crossing_json(const Crossing& c) {
  XY p = to_cartesian(c.point);
  nlohmann::json inc = nlohmann::json::array();
  for (const GridLine& g : c.incident) inc.push_back({g.j, g.k});
  return {{"point", {p.x, p.y}}, {"incident", inc}, {"multiplicity", c.multiplicity}};
}

nlohmann::json error_json(const std::string& kind, const std::string& message) {
  return {{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
}

nlohmann::json qr5_json(const Qr5& x) { return {{"exact", x.str()}, {"value", x.to_double()}}; }

std::vector<Qr5> parse_qr5_list(std::string_view text) {
  std::vector<Qr5> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_qr5(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace penrose
