#include "penrose/duality.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace penrose {

namespace {

const Qr5& two_fifths() {
  static const Qr5 c(Rational(2, 5));
  return c;
}

// Edge vectors have directions 0..9 in steps of 36 degrees: v_l -> 2l, -v_l -> 2l + 5.
int angle_units(int i, int j) {
  int d = ((2 * j - 2 * i) % 10 + 10) % 10;
  return std::min(d, 10 - d);
}

struct EdgeKey {
  PointV a, b;
  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
};

struct EdgeKeyHash {
  std::size_t operator()(const EdgeKey& e) const { return PointVHash()(e.a) * 7u + PointVHash()(e.b); }
};

bool before(const PointV& x, const PointV& y) {
  if (!(x.p == y.p)) return x.p < y.p;
  return x.q < y.q;
}

}  // namespace

const char* origin_name(TileOrigin o) {
  switch (o) {
    case TileOrigin::Dual:
      return "dual";
    case TileOrigin::WormFill:
      return "wormfill";
    case TileOrigin::CartwheelFill:
      return "cartwheelfill";
  }
  return "?";
}

PointV edge_vector(int j) {
  static const std::array<PointV, 5> e = [] {
    std::array<PointV, 5> r;
    for (int l = 0; l < 5; ++l) r[l] = two_fifths() * basis_vector(l);
    return r;
  }();
  return e[((j % 5) + 5) % 5];
}

std::array<PointV, 4> RhombTile::vertices() const {
  PointV ei = edge_vector(i), ej = edge_vector(j);
  return {anchor, anchor + ei, anchor + ei + ej, anchor + ej};
}

std::array<PointV, 4> RhombTile::ccw_vertices() const {
  std::array<PointV, 4> v = vertices();
  if (cross_sign(edge_vector(i), edge_vector(j)) < 0) std::swap(v[1], v[3]);
  return v;
}

RhombTile RhombTile::translated(const PointV& t) const {
  RhombTile r = *this;
  r.anchor += t;
  return r;
}

TileSet tile_set(const std::vector<RhombTile>& tiles) { return TileSet(tiles.begin(), tiles.end()); }

PointV dual_offset(const PentagridParams& u) {
  PointV s;
  for (int j = 0; j < 5; ++j) s += u[j] * basis_vector(j);
  return -(two_fifths() * s);
}

PointV dual_vertex(const IVec5& m, const PentagridParams& u) {
  return dual_offset(u) + two_fifths() * lattice_sum(m).point();
}

namespace {

PointV vertex_from(const PointV& offset, const IVec5& m) { return offset + two_fifths() * lattice_sum(m).point(); }

}  // namespace

PointV corner_dual(const PentagridParams& u, const Index2& n) {
  PointV b = rhomb_corner(u, n);
  IVec5 m{n[0], n[1], 0, 0, 0};
  for (int l = 2; l < 5; ++l) {
    Qr5 v = dot_family(l, b) + u[l];
    if (v.is_integer()) throw std::invalid_argument("corner crossing is not 2-fold");
    m[l] = v.floor();
  }
  return dual_vertex(m, u);
}

PolygonDual dual_polygon(const CrossingCode& c, const PentagridParams& u) {
  PolygonDual p;
  p.code = c;
  p.offset = dual_offset(u);
  switch (c.multiplicity()) {
    case 2:
      p.kind = PolygonKind::Rhomb;
      break;
    case 3: {
      int j = spine_family(c.mask);
      p.kind = c.incident((j + 1) % 5) ? PolygonKind::NarrowHexagon : PolygonKind::WideHexagon;
      break;
    }
    case 5:
      p.kind = PolygonKind::Decagon;
      break;
    default:
      throw std::logic_error("crossing of multiplicity " + std::to_string(c.multiplicity()));
  }
  for (std::uint8_t d : cell_cycle(c.mask)) {
    IVec5 m = c.base;
    for (int l = 0; l < 5; ++l)
      if ((d >> l) & 1) ++m[l];
    p.vertices.push_back(vertex_from(p.offset, m));
  }
  return p;
}

std::vector<PolygonDual> dual_patch(const PentagridParams& u, const Window& w) {
  std::vector<PolygonDual> out;
  for (const CrossingCode& c : enumerate_crossings(u, w.region())) out.push_back(dual_polygon(c, u));
  return out;
}

RhombTile dual_rhomb(const CrossingCode& c, const PentagridParams& u) {
  if (c.multiplicity() != 2) throw std::logic_error("dual_rhomb needs a 2-fold crossing");
  unsigned m = c.mask;
  int i = std::countr_zero(m);
  int j = std::countr_zero(m & (m - 1));
  return {i, j, dual_vertex(c.base, u), TileOrigin::Dual};
}

std::vector<RhombTile> resolve(const PolygonDual& p, const std::array<Qr5, 5>& delta, TileOrigin origin) {
  std::vector<int> fam;
  for (int l = 0; l < 5; ++l)
    if (p.code.incident(l)) fam.push_back(l);
  std::vector<RhombTile> out;
  for (std::size_t x = 0; x < fam.size(); ++x)
    for (std::size_t y = x + 1; y < fam.size(); ++y) {
      int a = fam[x], b = fam[y];
      // the perturbed lines of a and b meet here, relative to the crossing
      PointV s = solve_pair(a, b, -delta[a], -delta[b]);
      IVec5 m = p.code.base;
      for (int c : fam) {
        if (c == a || c == b) continue;
        int sg = (dot_family(c, s) + delta[c]).sign();
        if (sg == 0) throw std::invalid_argument("perturbation leaves a concurrent triple");
        if (sg > 0) ++m[c];
      }
      out.push_back({a, b, vertex_from(p.offset, m), origin});
    }
  return out;
}

std::vector<RhombTile> fill_worm(const std::vector<PolygonDual>& hexagons, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("worm sign must be +1 or -1");
  std::vector<RhombTile> out;
  std::optional<GridLine> spine;
  for (const PolygonDual& h : hexagons) {
    if (h.code.multiplicity() != 3) throw std::invalid_argument("worm filling expects hexagons");
    int j = spine_family(h.code.mask);
    GridLine s{j, h.code.base[j] + 1};
    if (spine && !(*spine == s)) throw std::invalid_argument("hexagons are not on a common worm axis");
    spine = s;
    std::array<Qr5, 5> delta{};
    delta[j] = Qr5(sign);
    for (const RhombTile& t : resolve(h, delta, TileOrigin::WormFill)) out.push_back(t);
  }
  return out;
}

std::array<int, 5> cartwheel_pattern(int k) {
  if (k < 0 || k > 9) throw std::invalid_argument("cartwheel filling index must be 0..9");
  std::array<int, 5> p{-1, 1, -1, -1, 1};
  for (int s = 0; s < k; ++s) {
    std::array<int, 5> q;
    q[0] = -p[4];
    for (int l = 1; l < 5; ++l) q[l] = -p[l - 1];
    p = q;
  }
  return p;
}

std::array<Qr5, 5> cartwheel_delta(int k) {
  std::array<int, 5> want = cartwheel_pattern(k);
  // Sector midpoints w = +-v_l.  Every triple at the center is resolved by
  // the sign of v_{2j} . w for its spine j.
  for (int l = 0; l < 5; ++l)
    for (int s : {1, -1}) {
      PointV w = Qr5(s) * basis_vector(l);
      std::array<Qr5, 5> d;
      bool ok = true;
      for (int j = 0; j < 5; ++j) {
        d[j] = dot(basis_vector(2 * j % 5), w);
        if (d[j].sign() != want[j]) ok = false;
      }
      if (ok) return d;
    }
  throw std::logic_error("no sector realizes the cartwheel pattern");
}

std::vector<RhombTile> fill_cartwheel(const std::vector<PolygonDual>& polygons, int k) {
  std::array<Qr5, 5> delta = cartwheel_delta(k);
  std::vector<RhombTile> out;
  for (const PolygonDual& p : polygons) {
    if (p.kind == PolygonKind::Rhomb) throw std::invalid_argument("cartwheel filling expects hexagons or a decagon");
    for (const RhombTile& t : resolve(p, delta, TileOrigin::CartwheelFill)) out.push_back(t);
  }
  return out;
}

std::vector<RhombTile> materialize(const PenroseTiling& x, const Window& w) {
  return materialize(x, w.shrunk(Qr5(-kMaterializeMargin)).region());
}

std::vector<RhombTile> materialize(const PenroseTiling& x, const Region& harvest) {
  const PentagridParams& u = x.params;
  std::vector<CrossingCode> codes = enumerate_crossings(u, harvest.translated(x.shift));
  ScanResult scan = singularity_scan(codes, u);

  std::optional<std::array<Qr5, 5>> delta;
  TileOrigin origin = TileOrigin::Dual;
  if (const auto* wf = std::get_if<WormFill>(&x.filling)) {
    if (std::holds_alternative<Cartwheel>(scan)) throw std::invalid_argument("worm filling requested for a cartwheel");
    if (wf->sign != 1 && wf->sign != -1) throw std::invalid_argument("worm sign must be +1 or -1");
    if (const auto* worm = std::get_if<Worm>(&scan)) {
      delta.emplace();
      (*delta)[worm->spine.j] = Qr5(wf->sign);
    }
    origin = TileOrigin::WormFill;
  } else if (const auto* cf = std::get_if<CartwheelFill>(&x.filling)) {
    if (std::holds_alternative<Worm>(scan)) throw std::invalid_argument("cartwheel filling requested for a worm");
    delta = cartwheel_delta(cf->k);
    origin = TileOrigin::CartwheelFill;
  } else if (!std::holds_alternative<Nonsingular>(scan)) {
    throw std::invalid_argument("singular parameters need a filling: " + describe(scan));
  }

  std::vector<RhombTile> out;
  out.reserve(codes.size() + 16);
  PointV offset = dual_offset(u) - x.shift;
  for (const CrossingCode& c : codes) {
    if (c.multiplicity() == 2) {
      unsigned m = c.mask;
      int i = std::countr_zero(m);
      int j = std::countr_zero(m & (m - 1));
      out.push_back({i, j, vertex_from(offset, c.base), TileOrigin::Dual});
      continue;
    }
    PolygonDual p = dual_polygon(c, u);
    p.offset = offset;
    for (const RhombTile& t : resolve(p, *delta, origin)) out.push_back(t);
  }
  return out;
}

std::vector<std::string> audit_tiling(const std::vector<RhombTile>& tiles, const Region& core) {
  std::vector<std::string> problems;
  std::unordered_map<PointV, int, PointVHash> angle;
  struct Side {
    int count = 0;
    int left = 0;
  };
  std::unordered_map<EdgeKey, Side, EdgeKeyHash> edges;
  TileSet seen;
  for (const RhombTile& t : tiles) {
    if (!seen.insert(t).second) problems.push_back("duplicate tile at " + to_string(t.anchor));
    std::array<PointV, 4> v = t.vertices();
    int a = angle_units(t.i, t.j);
    int units[4] = {a, 5 - a, a, 5 - a};
    PointV center = Qr5(Rational(1, 2)) * (v[0] + v[2]);
    for (int k = 0; k < 4; ++k) {
      angle[v[k]] += units[k];
      PointV p = v[k], q = v[(k + 1) % 4];
      if (!before(p, q)) std::swap(p, q);
      Side& s = edges[{p, q}];
      ++s.count;
      if (cross_sign(q - p, center - p) > 0) ++s.left;
    }
  }
  for (const auto& [p, units] : angle)
    if (core.contains(p) && units != 10)
      problems.push_back("vertex " + to_string(p) + " has angle sum " + std::to_string(36 * units) + " degrees");
  for (const auto& [e, s] : edges) {
    if (!core.contains(e.a) && !core.contains(e.b)) continue;
    if (s.count != 2 || s.left != 1)
      problems.push_back("edge " + to_string(e.a) + " - " + to_string(e.b) + " used by " + std::to_string(s.count) +
                         " tiles");
  }
  return problems;
}

}  // namespace penrose
