// Command-line front end.  Numbers are exact literals (see parse_qr5):
// rationals, s5, a (alpha) and g (golden); decimals are refused.  Points and
// directions are "p,q" in the {v0, v1} basis.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>

#include "penrose/shell.hpp"

using namespace penrose;
using nlohmann::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

PointV parse_point(const std::string& s) {
  std::vector<Qr5> v = parse_qr5_list(s);
  if (v.size() != 2) throw UsageError("expected p,q but got '" + s + "'");
  return {v[0], v[1]};
}

PentagridParams parse_params(const std::string& s) {
  std::vector<Qr5> v = parse_qr5_list(s);
  if (v.size() != 5) throw UsageError("--u needs five offsets");
  return make_params({v[0], v[1], v[2], v[3], v[4]});
}

// "auto" fills a singular window with the + worm or cartwheel 0.
Filling parse_fill(const std::string& s, const PentagridParams& u, const Region& where) {
  if (s == "none") return NoFill{};
  if (s == "plus" || s == "+") return WormFill{1};
  if (s == "minus" || s == "-") return WormFill{-1};
  if (s.rfind("cartwheel:", 0) == 0) return CartwheelFill{std::stoi(s.substr(10))};
  if (s != "auto") throw UsageError("unknown filling '" + s + "'");
  ScanResult r = singularity_scan(u, where);
  if (std::holds_alternative<Worm>(r)) return WormFill{1};
  if (std::holds_alternative<Cartwheel>(r)) return CartwheelFill{0};
  return NoFill{};
}

std::string fill_name(const Filling& f) {
  if (const auto* w = std::get_if<WormFill>(&f)) return w->sign > 0 ? "plus" : "minus";
  if (const auto* c = std::get_if<CartwheelFill>(&f)) return "cartwheel:" + std::to_string(c->k);
  return "none";
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::string format_for(const std::string& fmt, const std::string& out, const std::string& fallback) {
  if (!fmt.empty()) return fmt;
  auto dot = out.rfind('.');
  if (dot != std::string::npos) return out.substr(dot + 1);
  return fallback;
}

json point_json(const PointV& p) {
  XY c = to_cartesian(p);
  return {{"p", p.p.str()}, {"q", p.q.str()}, {"xy", {c.x, c.y}}};
}

json arc_json(const Arc& a) {
  return {{"interval", a.str()}, {"start", qr5_json(a.start)}, {"end", qr5_json(a.end)},
          {"length", a.length().to_double()}};
}

json direction_json(const DirectionV& d) {
  json j = point_json(d.generator);
  j["class"] = class_string(classify_direction(d));
  return j;
}

DirectionV direction_from(const std::string& dir, int perp) {
  if (perp >= 0) {
    if (perp > 4) throw UsageError("--perp must be 0..4");
    return DirectionV::perp(perp);
  }
  if (dir.empty()) throw UsageError("give --dir p,q or --perp j");
  PointV g = parse_point(dir);
  if (g.p.is_zero() && g.q.is_zero()) throw UsageError("zero direction");
  return DirectionV(g);
}

std::string matrix_text(const WangField& f) {
  std::string s;
  for (int r = 0; r < f.height; ++r) {
    for (int c = 0; c < f.width; ++c) s += (c ? " " : "") + std::to_string(f.ids[r * f.width + c]);
    s += "\n";
  }
  return s;
}

json roundtrip_json(const PenroseTiling& x, const Strip& s) {
  Reconstruction r = reconstruct_from_strip(s);
  json j = {{"frame", r.frame},
            {"u2", arc_json(r.u2)},
            {"u4", arc_json(r.u4)},
            {"carry", r.carry},
            {"anchor_id", r.anchor_id},
            {"anchor", point_json(r.anchor)},
            {"rows", {r.row_lo, r.row_hi}},
            {"columns", {r.col_lo, r.col_hi}},
            {"complete_patches", r.complete_patches},
            {"t0_box", {{"x", {r.t0_x0, r.t0_x1}}, {"y", {r.t0_y0, r.t0_y1}}}},
            {"t0_norm_max", r.t0_norm_max}};
  if (std::holds_alternative<NoFill>(x.filling)) {
    TruthCheck c = check_reconstruction(x, r);
    j["truth"] = {{"ok", c.ok()}, {"summary", c.summary()}};
    if (c.found) j["truth"]["t0"] = point_json(c.t0);
  } else {
    WormReading w = read_worm(s, r);
    json cands = json::array();
    for (const WormCandidate& c : w.candidates)
      cands.push_back({{"spine", c.spine}, {"filling", c.sign}, {"hexagons", c.hexagons.size()}});
    j["worm"] = {{"summary", w.summary()}, {"candidates", cands}};
  }
  return j;
}

json worm_witness(const WormCounterexample& w) {
  return {{"spine", {w.spine.j, w.spine.k}},
          {"strips_equal", w.audit.strips_equal},
          {"tilings_differ", w.audit.tilings_differ},
          {"strip_tiles", w.audit.strip_tiles},
          {"differing_tiles", w.audit.differing_tiles},
          {"max_spine_distance", w.audit.max_spine_distance},
          {"spine_bound", w.audit.spine_bound},
          {"ok", w.audit.ok()}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact pentagrids, Penrose tilings, Wang tiles and strip certificates"};
  app.require_subcommand(1);
  std::string u_text, shift_text, fill = "auto", out, format, layers_text = "rhombs", window_text = "20";
  std::string dir, slope, mode = "tiling", r_text = "6", L_text = "200", coding = "plus", word, lo_text = "0,0";
  std::string u2_text, u4_text, seed_text;
  int perp = -1, width = 20, height = 20, table = 1, j_worm = 0;
  long long from = 0, to = 29, start = 0, window_radius = 60;
  bool check = false, certify = false, triptych = false;

  auto* gen = app.add_subcommand("generate", "materialize a tiling in a window");
  gen->add_option("--u", u_text, "five offsets, comma-separated")->required();
  gen->add_option("--shift", shift_text, "translation p,q");
  gen->add_option("--window", window_text, "half-width of the window");
  gen->add_option("--fill", fill, "auto | none | plus | minus | cartwheel:K");
  gen->add_option("--layers", layers_text, "comma-separated: gridlines,rhombs,wangids,tetragons");
  gen->add_option("--format", format, "svg | json (default from --out)");
  gen->add_option("--out", out, "output file (stdout if absent)");

  auto* cls = app.add_subcommand("classify", "Wang id and symbol of a normal-form parameter");
  cls->add_option("--u2", u2_text)->required();
  cls->add_option("--u4", u4_text)->required();
  cls->add_option("--format", format, "text | json");

  auto* wf = app.add_subcommand("wangfield", "Wang ids of the patches n0 in [lo0, lo0+width), n1 likewise");
  wf->add_option("--u", u_text)->required();
  wf->add_option("--lo", lo_text);
  wf->add_option("--width", width);
  wf->add_option("--height", height);
  wf->add_flag("--check", check, "audit adjacency against the SFT");
  wf->add_option("--format", format, "text | csv | json");
  wf->add_option("--out", out);

  auto* sft = app.add_subcommand("sft", "allowed horizontal and vertical neighbours");
  sft->add_option("--format", format, "csv | json");

  auto* tet = app.add_subcommand("tetragons", "tetragon side vectors and types");
  tet->add_option("--format", format, "csv | json");

  auto* stu = app.add_subcommand("sturmian", "words of the rotation by alpha, or parameter recovery");
  stu->add_option("--u", u_text, "rotation parameter");
  stu->add_option("--from", from);
  stu->add_option("--to", to);
  stu->add_option("--coding", coding, "plus | minus");
  stu->add_option("--recover", word, "0/1 word to invert");
  stu->add_option("--start", start, "index of the word's first letter");

  auto add_strip_opts = [&](CLI::App* c) {
    c->add_option("--u", u_text)->required();
    c->add_option("--shift", shift_text);
    c->add_option("--fill", fill);
    c->add_option("--dir", dir, "direction p,q");
    c->add_option("--perp", perp, "direction perpendicular to v_j");
    c->add_option("--r", r_text, "strip half-width");
    c->add_option("--L", L_text, "strip half-length");
  };
  auto* stp = app.add_subcommand("strip", "tiles of a tiling inside a strip");
  add_strip_opts(stp);
  stp->add_option("--format", format, "json | svg");
  stp->add_option("--out", out);

  auto* rec = app.add_subcommand("reconstruct", "recover a tiling from one of its strips");
  add_strip_opts(rec);

  auto* worm = app.add_subcommand("wormdemo", "worm flip invisible from the strip along v_j-perp");
  worm->add_option("--j", j_worm)->check(CLI::Range(0, 4));
  worm->add_option("--r", r_text);
  worm->add_option("--window", window_radius);
  worm->add_flag("--triptych", triptych, "write the unfilled/+/- picture of the base worm to --out");
  worm->add_option("--out", out);

  auto* exp = app.add_subcommand("expansive", "classify a direction, optionally with a certificate");
  exp->add_option("--dir", dir, "tiling-plane direction p,q");
  exp->add_option("--perp", perp);
  exp->add_option("--slope", slope, "lattice-plane slope, or inf");
  exp->add_option("--mode", mode, "tiling | lattice");
  exp->add_flag("--certify", certify, "run a round trip or a worm flip at finite scale");
  exp->add_option("--u", u_text, "tiling for the round trip (random generic if absent)");
  exp->add_option("--seed", seed_text);
  exp->add_option("--r", r_text);
  exp->add_option("--L", L_text);

  auto* tab = app.add_subcommand("tables", "the Wang tile table or the tetragon vector table");
  tab->add_option("--table", table)->check(CLI::Range(1, 2));
  tab->add_option("--format", format, "csv | json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cout << error_json("usage", e.what()).dump() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      PentagridParams u = parse_params(u_text);
      PointV shift = shift_text.empty() ? PointV{} : parse_point(shift_text);
      Window w = Window::around(PointV{}, parse_qr5(window_text));
      Filling f = parse_fill(fill, translate_params(u, shift), w.region());
      PenroseTiling x{u, f, shift};
      std::string fmt = format_for(format, out, "svg");
      if (fmt == "json") {
        json j = tiles_json(materialize(x, w));
        j["params"] = json::array();
        for (int k = 0; k < 5; ++k) j["params"].push_back(u[k].str());
        j["filling"] = fill_name(f);
        emit(j.dump(1) + "\n", out);
      } else if (fmt == "svg") {
        SceneSpec scene{{}, w, {}};
        for (const std::string& name : CLI::detail::split(layers_text, ',')) {
          auto l = parse_layer(name);
          if (!l) throw UsageError("unknown layer '" + name + "'");
          scene.layers.push_back(*l);
        }
        SceneData d;
        PentagridParams moved = translate_params(u, shift);
        d.tiles = materialize(x, w);
        d.grid = moved;
        d.field_params = moved;
        bool need_field = std::any_of(scene.layers.begin(), scene.layers.end(),
                                      [](Layer l) { return l == Layer::WangIds || l == Layer::Tetragons; });
        if (need_field) {
          long long R = parse_qr5(window_text).ceil() + 2;
          d.field = wang_field(moved, {-R, -R}, static_cast<int>(2 * R + 1), static_cast<int>(2 * R + 1));
        }
        emit(render_svg(scene, d), out);
      } else {
        throw UsageError("unknown format '" + fmt + "'");
      }
    } else if (cls->parsed()) {
      Qr5 u2 = parse_qr5(u2_text), u4 = parse_qr5(u4_text);
      Classification c = classify_bifurcation(u2, u4);
      const CellId* id = std::get_if<CellId>(&c);
      if (format == "json") {
        json j = {{"schema", kSchema}, {"u2", u2.str()}, {"u4", u4.str()}};
        if (id) {
          j["id"] = id->id;
          j["symbol"] = symbol_string(wang_symbol(id->id));
        } else {
          j["boundary"] = std::get<Boundary>(c).types;
        }
        std::cout << j.dump() << "\n";
      } else {
        std::cout << classification_string(c);
        if (id) std::cout << " symbol " << symbol_string(wang_symbol(id->id));
        std::cout << "\n";
      }
    } else if (wf->parsed()) {
      PentagridParams u = parse_params(u_text);
      PointV lo = parse_point(lo_text);
      if (!lo.p.is_integer() || !lo.q.is_integer()) throw UsageError("--lo must be integers");
      if (width <= 0 || height <= 0) throw UsageError("empty field");
      WangField f = wang_field(u, {lo.p.floor(), lo.q.floor()}, width, height);
      std::string fmt = format_for(format, out, "text");
      std::string text;
      if (fmt == "json") {
        json j = {{"schema", kSchema}, {"lo", {f.lo[0], f.lo[1]}}, {"width", f.width}, {"height", f.height}, {"ids", f.ids}};
        if (check) j["violations"] = check_field(f);
        text = j.dump() + "\n";
      } else if (fmt == "csv") {
        text = matrix_text(f);
        for (char& ch : text)
          if (ch == ' ') ch = ',';
      } else {
        text = matrix_text(f);
      }
      emit(text, out);
      if (check && fmt != "json") {
        auto bad = check_field(f);
        std::cerr << bad.size() << " adjacency violations\n";
        if (!bad.empty()) return 1;
      }
    } else if (sft->parsed()) {
      const SftAdjacency& a = sft_adjacency();
      if (format == "json") {
        json right = json::array(), above = json::array();
        for (int x = 0; x < kWangCount; ++x)
          for (int y = 0; y < kWangCount; ++y) {
            if (a.right[x][y]) right.push_back({x, y});
            if (a.above[x][y]) above.push_back({x, y});
          }
        std::cout << json{{"schema", kSchema}, {"right", right}, {"above", above}}.dump() << "\n";
      } else {
        std::cout << "relation,first,second\n";
        for (int x = 0; x < kWangCount; ++x)
          for (int y = 0; y < kWangCount; ++y) {
            if (a.right[x][y]) std::cout << "right," << x << "," << y << "\n";
            if (a.above[x][y]) std::cout << "above," << x << "," << y << "\n";
          }
      }
    } else if (tet->parsed() || (tab->parsed() && table == 2)) {
      // the eight side vectors, bottom/top and left/right, by index
      std::map<std::pair<int, int>, XY> vecs;
      for (const Tetragon& g : tetragons())
        for (int s = 0; s < 4; ++s) vecs[{s < 2 ? 0 : 1, g.vector_index[s]}] = to_cartesian(g.sides[s]);
      if (tet->parsed()) {
        if (format == "json") {
          json arr = json::array();
          for (const Tetragon& g : tetragons()) {
            json sides = json::array();
            for (const PointV& p : g.sides) sides.push_back(point_json(p));
            arr.push_back({{"id", g.id}, {"type", g.type}, {"vector_index", g.vector_index}, {"sides", sides}});
          }
          std::cout << json{{"schema", kSchema}, {"types", tetragon_type_count()}, {"tetragons", arr}}.dump(1) << "\n";
        } else {
          std::cout << "id,type,bottom,top,left,right\n";
          for (const Tetragon& g : tetragons())
            std::cout << g.id << "," << g.type << "," << g.vector_index[0] << "," << g.vector_index[1] << ","
                      << g.vector_index[2] << "," << g.vector_index[3] << "\n";
        }
      } else if (format == "json") {
        json arr = json::array();
        for (const auto& [k, v] : vecs) arr.push_back({{"sides", k.first ? "left/right" : "bottom/top"}, {"index", k.second}, {"x", v.x}, {"y", v.y}});
        std::cout << json{{"schema", kSchema}, {"vectors", arr}}.dump(1) << "\n";
      } else {
        std::cout << "sides,index,x,y\n";
        char buf[96];
        for (const auto& [k, v] : vecs) {
          std::snprintf(buf, sizeof buf, "%s,%d,%.4f,%.4f\n", k.first ? "left/right" : "bottom/top", k.second, v.x, v.y);
          std::cout << buf;
        }
      }
    } else if (tab->parsed()) {
      if (format == "json") {
        json arr = json::array();
        for (const WangTile& t : wang_tiles()) {
          json codes = json::array();
          for (const EdgeWord& w : t.codes) codes.push_back(word_string(w));
          arr.push_back({{"id", t.id}, {"codes", codes}, {"colors", t.colors},
                         {"vector_index", tetragon_edges(t.id).vector_index}, {"type", tetragon_edges(t.id).type}});
        }
        std::cout << json{{"schema", kSchema}, {"tiles", arr}}.dump(1) << "\n";
      } else {
        std::cout << "id,bottom,top,left,right,c_b,c_t,c_l,c_r,type\n";
        for (const WangTile& t : wang_tiles()) {
          std::cout << t.id;
          for (const EdgeWord& w : t.codes) std::cout << ",\"" << word_string(w) << "\"";
          for (int c : t.colors) std::cout << "," << c;
          std::cout << "," << tetragon_edges(t.id).type << "\n";
        }
      }
    } else if (stu->parsed()) {
      Coding c = coding == "minus" ? Coding::Minus : Coding::Plus;
      if (coding != "plus" && coding != "minus") throw UsageError("--coding is plus or minus");
      if (!word.empty()) {
        std::vector<std::pair<long long, int>> w;
        for (std::size_t k = 0; k < word.size(); ++k) {
          if (word[k] != '0' && word[k] != '1') throw UsageError("words are made of 0 and 1");
          w.push_back({start + static_cast<long long>(k), word[k] - '0'});
        }
        std::cout << recover_parameter(w, c).str() << "\n";
      } else {
        if (u_text.empty()) throw UsageError("give --u or --recover");
        if (to < from) throw UsageError("--to is below --from");
        std::cout << sturmian_word(parse_qr5(u_text), c, from, to).str() << "\n";
      }
    } else if (stp->parsed() || rec->parsed()) {
      PentagridParams u = parse_params(u_text);
      PointV shift = shift_text.empty() ? PointV{} : parse_point(shift_text);
      DirectionV d = direction_from(dir, perp);
      Qr5 r = parse_qr5(r_text), L = parse_qr5(L_text);
      Filling f = parse_fill(fill, translate_params(u, shift), strip_hull(d, r, L, 1.0));
      PenroseTiling x{u, f, shift};
      Strip s = strip_extract(x, d, r, L);
      if (stp->parsed()) {
        std::string fmt = format_for(format, out, "json");
        if (fmt == "svg") {
          Qr5 half = Qr5((L + r).ceil() + 1);
          SceneSpec scene{{Layer::Rhombs, Layer::StripOverlay}, Window::around(PointV{}, half), {}};
          SceneData data;
          data.tiles = s.tiles;
          data.strip = s;
          emit(render_svg(scene, data), out);
        } else {
          json j = tiles_json(s.tiles);
          j["direction"] = direction_json(d);
          j["scale"] = {{"r", r.str()}, {"L", L.str()}};
          emit(j.dump(1) + "\n", out);
        }
      } else {
        json j = {{"schema", kSchema},
                  {"direction", direction_json(d)},
                  {"scale", {{"r", r.str()}, {"L", L.str()}, {"window", nullptr}}},
                  {"strip_tiles", s.tiles.size()},
                  {"roundtrip", roundtrip_json(x, s)}};
        bool ok = !j["roundtrip"].contains("truth") || j["roundtrip"]["truth"]["ok"].get<bool>();
        j["verdict"] = ok ? "reconstructed at this scale" : "reconstruction disagrees with the source";
        std::cout << j.dump(1) << "\n";
        if (!ok) return 1;
      }
    } else if (worm->parsed()) {
      if (triptych) {
        if (out.empty()) throw UsageError("--triptych needs --out");
        PentagridParams base = make_params({0, 0, Qr5(Rational(1, 3)), 0, Qr5(Rational(2, 3))});
        emit(render_worm_triptych(base, Window::around(PointV{}, Qr5(4))), out);
      }
      WormCounterexample w = worm_flip_counterexample(j_worm, parse_qr5(r_text), window_radius);
      json j = {{"schema", kSchema},
                {"direction", direction_json(DirectionV::perp(j_worm))},
                {"verdict", w.audit.ok() ? "non-expansive" : "witness failed"},
                {"scale", {{"r", parse_qr5(r_text).str()}, {"L", window_radius}, {"window", window_radius}}},
                {"witness", worm_witness(w)}};
      std::cout << j.dump(1) << "\n";
      if (!w.audit.ok()) return 1;
    } else if (exp->parsed()) {
      DirectionClass c;
      DirectionV d(PointV{1, 0});
      if (mode == "lattice") {
        if (slope.empty()) throw UsageError("lattice mode takes --slope");
        std::optional<Qr5> m;
        if (slope != "inf") m = parse_qr5(slope);
        c = classify_lattice_slope(m);
        d = to_tiling(m ? LatticeVec{Qr5(1), *m} : LatticeVec{Qr5(0), Qr5(1)});
      } else if (mode == "tiling") {
        if (!slope.empty()) throw UsageError("--slope belongs to lattice mode; use --dir in the tiling plane");
        d = direction_from(dir, perp);
        c = classify_direction(d);
      } else {
        throw UsageError("--mode is tiling or lattice");
      }
      if (!certify) {
        std::cout << class_string(c) << "\n";
        return 0;
      }
      Qr5 r = parse_qr5(r_text), L = parse_qr5(L_text);
      json j = {{"schema", kSchema}, {"direction", direction_json(d)}, {"verdict", class_string(c)}};
      if (const auto* n = std::get_if<NonExpansive>(&c)) {
        WormCounterexample w = worm_flip_counterexample(n->j, r, window_radius);
        j["scale"] = {{"r", r.str()}, {"L", window_radius}, {"window", window_radius}};
        j["witness"] = worm_witness(w);
        if (!w.audit.ok()) j["verdict"] = "witness failed";
      } else {
        PentagridParams u;
        if (!u_text.empty()) {
          u = parse_params(u_text);
        } else {
          std::mt19937_64 rng(seed_text.empty() ? 1 : std::stoull(seed_text));
          std::array<Qr5, 5> raw;
          Rational sum;
          for (int k = 0; k < 4; ++k) {
            long long den = 2 + static_cast<long long>(rng() % 996);
            raw[k] = Rational(1 + static_cast<long long>(rng() % (den - 1)), den);
            sum += raw[k].a();
          }
          raw[4] = Qr5(-sum);
          u = make_params(raw);
        }
        PenroseTiling x{u, NoFill{}, {}};
        Strip s = strip_extract(x, d, r, L);
        j["scale"] = {{"r", r.str()}, {"L", L.str()}, {"window", nullptr}};
        j["roundtrip"] = roundtrip_json(x, s);
        if (j["roundtrip"].contains("truth") && !j["roundtrip"]["truth"]["ok"].get<bool>())
          j["verdict"] = "round trip failed";
      }
      std::cout << j.dump(1) << "\n";
    }
  } catch (const UsageError& e) {
    std::cout << error_json("usage", e.what()).dump() << "\n";
    return 2;
  } catch (const ReconstructionError& e) {
    const char* kinds[] = {"degenerate frame", "coverage gap", "inconsistent strip"};
    std::cout << error_json(kinds[e.kind], e.what()).dump() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cout << error_json("invalid input", e.what()).dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << error_json("failure", e.what()).dump() << "\n";
    return 1;
  }
  return 0;
}
