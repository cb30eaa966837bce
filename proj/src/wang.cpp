#include "penrose/wang.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace penrose {

namespace {

// Code words by id.  Patches get their id by matching all four words.
// Rows 1, 13 and 18 of the printed table misplace bars; these are the
// readings forced by the color columns (and found by the trail reader).
const std::array<EdgeCodes, kWangCount> kPinnedCodes = {{
    {{{4, -3, -2}, {4, -2}, {2, -3, -4}, {2, -4}}},
    {{{-2, 4}, {-2, -3, 4}, {-4, 2}, {-4, -3, 2}}},
    {{{-2}, {-3, -2}, {-4}, {-3, -4}}},
    {{{-2, -3}, {-2}, {-4, -3}, {-4}}},
    {{{-3, -2, 4}, {-2, -3, 4}, {-3, -4, 2}, {-4, -3, 2}}},
    {{{4, -3, -2}, {4, -2, -3}, {2, -3, -4}, {2, -4, -3}}},
    {{{4, -2}, {-3, -2, 4}, {2, -4}, {-3, -4, 2}}},
    {{{4, -2, -3}, {-2, 4}, {2, -4, -3}, {-4, 2}}},
    {{{-2, -3, 4}, {4, -2, -3}, {-3, -4}, {-4, -3}}},
    {{{-3, -2, 4}, {4, -3, -2}, {-3, -4}, {-4, -3}}},
    {{{-3, -2}, {-2, -3}, {-4, -3, 2}, {2, -4, -3}}},
    {{{-3, -2}, {-2, -3}, {-3, -4, 2}, {2, -3, -4}}},
    {{{-2, -3}, {-2}, {-4, -3, 2}, {-4, 2}}},
    {{{-2}, {-3, -2}, {2, -4}, {2, -3, -4}}},
    {{{-2, -3, 4}, {-2, 4}, {-4, -3}, {-4}}},
    {{{4, -2}, {4, -3, -2}, {-4}, {-3, -4}}},
    {{{-2, 4}, {-3, -2, 4}, {2, -4}, {-4, -3, 2}}},
    {{{4, -2, -3}, {4, -2}, {2, -3, -4}, {-4, 2}}},
    {{{4, -3, -2}, {-2, 4}, {2, -4, -3}, {2, -4}}},
    {{{4, -2}, {-2, -3, 4}, {-4, 2}, {-3, -4, 2}}},
    {{{-2}, {-2, -3}, {-4, 2}, {2, -3, -4}}},
    {{{-3, -2}, {-2}, {-4, -3, 2}, {2, -4}}},
    {{{-2, 4}, {4, -3, -2}, {-4}, {-4, -3}}},
    {{{-2, -3, 4}, {4, -2}, {-3, -4}, {-4}}},
}};

struct CellEntry {
  const char* signature;
  int id;
};

#include "wang_cells.inc"

std::pair<int, int> families(std::uint8_t mask) {
  unsigned m = mask;
  return {std::countr_zero(m), std::countr_zero(m & (m - 1))};
}

struct PatchKeyHash {
  std::size_t operator()(const PatchKey& k) const {
    std::size_t h = k.size();
    for (const PatchTile& t : k) h = h * 1000003u ^ (ZVecHash()(t.rel) + static_cast<std::size_t>(t.i * 5 + t.j));
    return h;
  }
};

// Family-j edges of a patch, keyed by start point.
struct EdgeIndex {
  std::map<std::pair<ZVec, int>, std::vector<int>> at;

  explicit EdgeIndex(const PatchKey& key) {
    for (int t = 0; t < static_cast<int>(key.size()); ++t) {
      const PatchTile& x = key[t];
      ZVec fi = ZVec::family(x.i), fj = ZVec::family(x.j);
      at[{x.rel, x.i}].push_back(t);
      at[{x.rel + fj, x.i}].push_back(t);
      at[{x.rel, x.j}].push_back(t);
      at[{x.rel + fi, x.j}].push_back(t);
    }
  }

  int other(const ZVec& p, int j, int t) const {
    auto it = at.find({p, j});
    if (it == at.end()) return -1;
    for (int s : it->second)
      if (s != t) return s;
    return -1;
  }
};

int other_family(const PatchTile& t, int j) { return t.i == j ? t.j : t.i; }

struct Walk {
  int end = -1;
  EdgeWord word;
};

// Trail of family-j edges starting at corner tile `start`, leaving through
// the edge on its +v'_o side (o the corner's other family), up to the next
// corner tile.
Walk walk_trail(const PatchKey& key, const EdgeIndex& edges, int start, int j) {
  Walk w;
  int t = start;
  int o = other_family(key[t], j);
  ZVec exit = key[t].rel + ZVec::family(o);
  for (std::size_t guard = 0; guard <= key.size(); ++guard) {
    int s = edges.other(exit, j, t);
    if (s < 0) throw std::logic_error("trail leaves the patch");
    const PatchTile& x = key[s];
    int os = other_family(x, j);
    ZVec lo = x.rel, hi = x.rel + ZVec::family(os);
    int sign = 0;
    if (exit == lo) {
      sign = 1;
      exit = hi;
    } else if (exit == hi) {
      sign = -1;
      exit = lo;
    } else {
      throw std::logic_error("trail edge mismatch");
    }
    if (x.i == 0 && x.j == 1) {
      w.end = s;
      return w;
    }
    w.word.push_back(sign * os);
    t = s;
  }
  throw std::logic_error("trail does not close");
}

int find_tile(const PatchKey& key, int i, int j, const ZVec& rel) {
  for (int t = 0; t < static_cast<int>(key.size()); ++t)
    if (key[t].i == i && key[t].j == j && key[t].rel == rel) return t;
  return -1;
}

int trail_count(const PatchKey& key, const EdgeIndex& edges, int j) {
  std::vector<int> parent(key.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int count = 0;
  for (int t = 0; t < static_cast<int>(key.size()); ++t) {
    if (key[t].i == j || key[t].j == j) ++count;
  }
  for (const auto& [pk, ts] : edges.at) {
    if (pk.second != j || ts.size() < 2) continue;
    for (std::size_t a = 1; a < ts.size(); ++a) {
      int x = root(ts[0]), y = root(ts[a]);
      if (x != y) {
        parent[x] = y;
        --count;
      }
    }
  }
  return count;
}

std::string mask_type(std::uint8_t mask) {
  std::string s;
  for (int l = 0; l < 5; ++l)
    if ((mask >> l) & 1) s.push_back(static_cast<char>('0' + l));
  return s;
}

const Qr5& two_fifths() {
  static const Qr5 c(Rational(2, 5));
  return c;
}

}  // namespace

PatchKey patch_key(const std::vector<CrossingCode>& rhomb_crossings, const Index2& n) {
  const CrossingCode* corner = nullptr;
  for (const CrossingCode& c : rhomb_crossings) {
    if (c.multiplicity() != 2) throw SingularPatch("rhomb contains a crossing of type " + mask_type(c.mask));
    if (c.mask == 3 && c.base[0] == n[0] - 1 && c.base[1] == n[1] - 1) corner = &c;
  }
  if (!corner) throw std::logic_error("rhomb corner crossing not found");
  IVec5 md = corner->base;
  ++md[0];
  ++md[1];
  PatchKey key;
  key.reserve(rhomb_crossings.size());
  for (const CrossingCode& c : rhomb_crossings) {
    auto [i, j] = families(c.mask);
    IVec5 d;
    for (int l = 0; l < 5; ++l) d[l] = c.base[l] - md[l];
    key.push_back({i, j, lattice_sum(d)});
  }
  std::sort(key.begin(), key.end());
  return key;
}

PatchKey patch_key(const PentagridParams& u, const Index2& n) { return patch_key(crossings_in_rhomb(u, n), n); }

std::vector<RhombTile> patch_tiles(const PatchKey& key, const PointV& dn) {
  std::vector<RhombTile> out;
  for (const PatchTile& t : key) out.push_back({t.i, t.j, dn + two_fifths() * t.rel.point(), TileOrigin::Dual});
  return out;
}

std::string word_string(const EdgeWord& w) {
  std::string s;
  for (int x : w) {
    if (!s.empty()) s += ' ';
    s += std::to_string(x);
  }
  return s;
}

EdgeCodes read_edge_codes(const PatchKey& key) {
  EdgeIndex edges(key);
  ZVec f0 = ZVec::family(0), f1 = ZVec::family(1);
  int dn = find_tile(key, 0, 1, ZVec{} - f0 - f1);
  if (dn < 0) throw std::logic_error("patch has no corner tile at d_n");
  EdgeCodes c;
  Walk bottom = walk_trail(key, edges, dn, 1);
  Walk left = walk_trail(key, edges, dn, 0);
  Walk top = walk_trail(key, edges, left.end, 1);
  Walk right = walk_trail(key, edges, bottom.end, 0);
  if (top.end != right.end) throw std::logic_error("boundary trails do not close up");
  c[kBottom] = bottom.word;
  c[kTop] = top.word;
  c[kLeft] = left.word;
  c[kRight] = right.word;
  return c;
}

std::string symbol_string(const Symbol& s) { return std::to_string(s.z) + "x" + std::to_string(s.zp); }

Symbol wang_symbol(const PatchKey& key) {
  EdgeIndex edges(key);
  return {trail_count(key, edges, 4) - 1, trail_count(key, edges, 2) - 1};
}

Symbol wang_symbol(int id) { return wang_symbol(canon_24().at(id).tiles); }

Symbol grid_symbol(const std::vector<CrossingCode>& rhomb_crossings) {
  return {lines_through_rhomb(rhomb_crossings, 4) - 1, lines_through_rhomb(rhomb_crossings, 2) - 1};
}

std::vector<CanonPatch> enumerate_canon_24() {
  std::map<PatchKey, CanonPatch> found;
  const auto& faces = arrangement_faces();
  for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
    UV x = interior_point(faces[f]);
    PentagridParams u = normal_form_params(x.u2, x.u4);
    PatchKey key = patch_key(crossings_in_rhomb(u, {0, 0}), {0, 0});
    auto [it, fresh] = found.try_emplace(key);
    if (fresh) {
      it->second.tiles = key;
      it->second.sample = x;
    }
    it->second.faces.push_back(f);
  }
  std::vector<CanonPatch> out(kWangCount);
  for (auto& [key, cp] : found) {
    cp.codes = read_edge_codes(key);
    auto row = std::find(kPinnedCodes.begin(), kPinnedCodes.end(), cp.codes);
    if (row == kPinnedCodes.end())
      throw std::logic_error("patch with unlisted edge codes " + word_string(cp.codes[0]) + " / " +
                             word_string(cp.codes[1]) + " / " + word_string(cp.codes[2]) + " / " +
                             word_string(cp.codes[3]));
    cp.id = static_cast<int>(row - kPinnedCodes.begin());
    if (out[cp.id].id >= 0) throw std::logic_error("two patches share edge codes");
    out[cp.id] = cp;
  }
  for (const CanonPatch& cp : out)
    if (cp.id < 0) throw std::logic_error("fewer than 24 Wang patches found");
  return out;
}

const std::vector<CanonPatch>& canon_24() {
  static const std::vector<CanonPatch> c = enumerate_canon_24();
  return c;
}

int patch_id(const PatchKey& key) {
  static const std::unordered_map<PatchKey, int, PatchKeyHash> index = [] {
    std::unordered_map<PatchKey, int, PatchKeyHash> m;
    for (const CanonPatch& cp : canon_24()) m[cp.tiles] = cp.id;
    return m;
  }();
  auto it = index.find(key);
  if (it == index.end()) throw std::logic_error("patch is none of the 24 Wang patches");
  return it->second;
}

namespace {

void check_unit(const Qr5& u2, const Qr5& u4) {
  if (u2.sign() < 0 || u2 >= Qr5(1) || u4.sign() < 0 || u4 >= Qr5(1))
    throw ParamError("normal-form parameters must lie in [0, 1)");
}

}  // namespace

Classification classify_bifurcation(const Qr5& u2, const Qr5& u4) {
  check_unit(u2, u4);
  PentagridParams u = normal_form_params(u2, u4);
  std::vector<CrossingCode> codes = crossings_in_rhomb(u, {0, 0});
  Boundary b;
  for (const CrossingCode& c : codes)
    if (c.multiplicity() > 2) {
      b.witnesses.push_back(c);
      std::string t = mask_type(c.mask);
      if (std::find(b.types.begin(), b.types.end(), t) == b.types.end()) b.types.push_back(t);
    }
  if (!b.witnesses.empty()) {
    std::sort(b.types.begin(), b.types.end());
    return b;
  }
  return CellId{patch_id(patch_key(codes, {0, 0}))};
}

Classification classify_closed_form(const Qr5& u2, const Qr5& u4) {
  check_unit(u2, u4);
  static const std::unordered_map<std::string, int> table = [] {
    if (static_cast<int>(bifurcation_lines().size()) != kCellLineCount)
      throw std::logic_error("frozen cell table does not match the bifurcation lines");
    std::unordered_map<std::string, int> m;
    for (const CellEntry& e : kCellTable) m[e.signature] = e.id;
    return m;
  }();
  UV x{u2, u4};
  std::vector<std::string> types = singular_types_at(x);
  if (!types.empty()) return Boundary{types, {}};
  std::string sig = side_signature(x);
  std::vector<std::size_t> zeros;
  for (std::size_t k = 0; k < sig.size(); ++k)
    if (sig[k] == '0') zeros.push_back(k);
  // On an extension of a bifurcation line only: every adjacent face agrees.
  std::optional<int> id;
  for (unsigned bits = 0; bits < (1u << zeros.size()); ++bits) {
    for (std::size_t z = 0; z < zeros.size(); ++z) sig[zeros[z]] = ((bits >> z) & 1) ? '+' : '-';
    auto it = table.find(sig);
    if (it == table.end()) continue;
    if (id && *id != it->second) throw std::logic_error("faces on both sides of a regular line differ");
    id = it->second;
  }
  if (!id) throw std::logic_error("point outside every frozen face");
  return CellId{*id};
}

std::string classification_string(const Classification& c) {
  if (const auto* id = std::get_if<CellId>(&c)) return "id " + std::to_string(id->id);
  const Boundary& b = std::get<Boundary>(c);
  std::string s = "Boundary";
  for (const std::string& t : b.types) s += " " + t;
  return s;
}

const std::vector<WangTile>& wang_tiles() {
  static const std::vector<WangTile> tiles = [] {
    std::vector<WangTile> out;
    std::vector<EdgeWord> bt, lr;
    auto color = [](std::vector<EdgeWord>& seen, const EdgeWord& w) {
      auto it = std::find(seen.begin(), seen.end(), w);
      if (it != seen.end()) return static_cast<int>(it - seen.begin());
      seen.push_back(w);
      return static_cast<int>(seen.size()) - 1;
    };
    for (const CanonPatch& cp : canon_24()) {
      WangTile t;
      t.id = cp.id;
      t.codes = cp.codes;
      t.colors[kBottom] = color(bt, cp.codes[kBottom]);
      t.colors[kTop] = color(bt, cp.codes[kTop]);
      t.colors[kLeft] = color(lr, cp.codes[kLeft]);
      t.colors[kRight] = color(lr, cp.codes[kRight]);
      out.push_back(t);
    }
    return out;
  }();
  return tiles;
}

const WangTile& edge_codes_and_colors(int id) { return wang_tiles().at(id); }

const SftAdjacency& sft_adjacency() {
  static const SftAdjacency adj = [] {
    SftAdjacency a;
    const auto& w = wang_tiles();
    for (int x = 0; x < kWangCount; ++x)
      for (int y = 0; y < kWangCount; ++y) {
        a.right[x][y] = w[x].colors[kRight] == w[y].colors[kLeft];
        a.above[x][y] = w[x].colors[kTop] == w[y].colors[kBottom];
      }
    return a;
  }();
  return adj;
}

WangField wang_field(const PentagridParams& u, const Index2& lo, int width, int height) {
  if (width <= 0 || height <= 0) throw std::invalid_argument("empty Wang field");
  WangField f;
  f.lo = lo;
  f.width = width;
  f.height = height;
  f.ids.resize(static_cast<std::size_t>(width) * height);
  for (int y = 0; y < height; ++y)
    for (int x = 0; x < width; ++x) {
      Index2 n{lo[0] + x, lo[1] + y};
      try {
        f.ids[static_cast<std::size_t>(y) * width + x] = patch_id(patch_key(u, n));
      } catch (const SingularPatch& e) {
        throw SingularPatch("patch (" + std::to_string(n[0]) + "," + std::to_string(n[1]) + "): " + e.what());
      }
    }
  return f;
}

std::vector<std::string> check_field(const WangField& f) {
  std::vector<std::string> bad;
  const SftAdjacency& a = sft_adjacency();
  for (int y = 0; y < f.height; ++y)
    for (int x = 0; x < f.width; ++x) {
      long long n0 = f.lo[0] + x, n1 = f.lo[1] + y;
      int id = f.at(n0, n1);
      auto where = [&] { return "(" + std::to_string(n0) + "," + std::to_string(n1) + ")"; };
      if (x + 1 < f.width && !a.right[id][f.at(n0 + 1, n1)]) bad.push_back("horizontal mismatch at " + where());
      if (y + 1 < f.height && !a.above[id][f.at(n0, n1 + 1)]) bad.push_back("vertical mismatch at " + where());
    }
  return bad;
}

PointV word_vector(Side s, const EdgeWord& w) {
  ZVec z = ZVec::family(s == kBottom || s == kTop ? 0 : 1);
  for (int x : w) z = x > 0 ? z + ZVec::family(x) : z - ZVec::family(-x);
  return two_fifths() * z.point();
}

const std::vector<Tetragon>& tetragons() {
  static const std::vector<Tetragon> out = [] {
    const auto& w = wang_tiles();
    // vector index per side pair: vectors numbered in color order
    std::array<std::vector<PointV>, 2> by_color;
    std::array<std::vector<int>, 2> color_vec;
    for (int pair = 0; pair < 2; ++pair) {
      std::map<int, PointV> cv;
      for (const WangTile& t : w)
        for (int s : {2 * pair, 2 * pair + 1}) cv[t.colors[s]] = word_vector(static_cast<Side>(s), t.codes[s]);
      std::vector<PointV>& seen = by_color[pair];
      for (const auto& [c, v] : cv) {
        auto it = std::find(seen.begin(), seen.end(), v);
        if (it == seen.end()) {
          seen.push_back(v);
          it = seen.end() - 1;
        }
        color_vec[pair].push_back(static_cast<int>(it - seen.begin()));
      }
    }
    std::vector<Tetragon> r;
    std::vector<std::array<int, 4>> types;
    for (const WangTile& t : w) {
      Tetragon g;
      g.id = t.id;
      for (int s = 0; s < 4; ++s) {
        g.sides[s] = word_vector(static_cast<Side>(s), t.codes[s]);
        g.vector_index[s] = color_vec[s / 2][t.colors[s]];
      }
      auto it = std::find(types.begin(), types.end(), g.vector_index);
      if (it == types.end()) {
        types.push_back(g.vector_index);
        it = types.end() - 1;
      }
      g.type = static_cast<int>(it - types.begin());
      r.push_back(g);
    }
    return r;
  }();
  return out;
}

const Tetragon& tetragon_edges(int id) { return tetragons().at(id); }

int tetragon_type_count() {
  int m = 0;
  for (const Tetragon& t : tetragons()) m = std::max(m, t.type + 1);
  return m;
}

LatticeVec to_lattice(const DirectionV& d) { return {dot_family(0, d.generator), dot_family(1, d.generator)}; }

DirectionV to_tiling(const LatticeVec& g) { return DirectionV(apply_A(g.x, g.y)); }

std::optional<Qr5> lattice_slope(const LatticeVec& g) {
  if (g.x.is_zero()) return std::nullopt;
  return g.y / g.x;
}

double bent_line_deviation(const PentagridParams& u, long long n1, long long lo, long long hi) {
  double worst = 0;
  for (long long n0 = lo; n0 <= hi; ++n0) {
    PointV diff = rhomb_corner(u, {n0, n1}) - corner_dual(u, {n0, n1});
    worst = std::max(worst, std::sqrt(dot(diff, diff).to_double()));
  }
  return worst;
}

}  // namespace penrose
