#include "penrose/expansive.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

namespace penrose {

namespace {

const Qr5& two_fifths() {
  static const Qr5 c(Rational(2, 5));
  return c;
}

Rational to_rational(double x) { return Rational(std::llround(x * 4096.0), 4096); }

PointV from_cartesian(double x, double y) {
  const double s72 = std::sin(72.0 * M_PI / 180.0), c72 = std::cos(72.0 * M_PI / 180.0);
  double q = y / s72;
  return {Qr5(to_rational(x - q * c72)), Qr5(to_rational(q))};
}

XY unit(const PointV& g) {
  XY c = to_cartesian(g);
  double n = std::hypot(c.x, c.y);
  return {c.x / n, c.y / n};
}

XY cart_family(int j) { return {std::cos(72.0 * j * M_PI / 180.0), std::sin(72.0 * j * M_PI / 180.0)}; }

std::string join(const std::vector<long long>& v) {
  std::string s;
  for (long long x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return s;
}

// Angle of a tile at a vertex in units of 36 degrees (corners in
// vertices() order).
int corner_angle(const RhombTile& t, int corner) {
  int d = t.j - t.i;
  int at_anchor = (d == 1 || d == 4) ? 2 : 4;
  return corner % 2 == 0 ? at_anchor : 5 - at_anchor;
}

struct CanonIndex {
  std::map<PatchKey, int> id;
  std::array<bool, kWangCount> shadowed{};  // some other patch strictly contains this one
  std::array<Symbol, kWangCount> symbol{};
  std::array<int, kWangCount> carry{};     // 1 or 2, 0 when the cell straddles u2 + u4 = 1
};

const CanonIndex& canon_index() {
  static const CanonIndex c = [] {
    CanonIndex x;
    const auto& all = canon_24();
    const auto& faces = arrangement_faces();
    for (const CanonPatch& p : all) {
      x.id[p.tiles] = p.id;
      x.symbol[p.id] = wang_symbol(p.id);
      std::set<int> sides;
      for (int f : p.faces) {
        UV m = interior_point(faces[f]);
        sides.insert(m.u2 + m.u4 < Qr5(1) ? 1 : 2);
      }
      x.carry[p.id] = sides.size() == 1 ? *sides.begin() : 0;
    }
    for (const CanonPatch& a : all)
      for (const CanonPatch& b : all)
        if (a.id != b.id && b.tiles.size() > a.tiles.size() &&
            std::includes(b.tiles.begin(), b.tiles.end(), a.tiles.begin(), a.tiles.end()))
          x.shadowed[a.id] = true;
    return x;
  }();
  return c;
}

// Pieces of an arc inside [0, 1].
std::vector<std::pair<Qr5, Qr5>> arc_pieces(const Arc& a) {
  if (a.end <= Qr5(1)) return {{a.start, a.end}};
  return {{a.start, Qr5(1)}, {Qr5(0), a.end - Qr5(1)}};
}

Arc shift_arc(const Arc& a, long long n) {
  Qr5 s = (a.start + Qr5(n) * Qr5::alpha()).frac();
  return {s, s + a.length(), a.coding, a.pieces};
}

struct StripTile {
  RhombTile tile;
  IVec5 base{};
};

}  // namespace

// ---------------------------------------------------------------- strips

bool in_strip(const PointV& x, const DirectionV& d, const Qr5& r, const Qr5& L) {
  return filtered([&](auto tag) {
    using S = decltype(tag);
    Vec2<S> g = lift<S>(d.generator), p = lift<S>(x);
    S pg = dot(p, g), gg = dot(g, g);
    S rr = lift<S>(r * r), ll = lift<S>(L * L);
    if (sign(pg * pg - ll * gg) > 0) return false;
    return sign(gg * dot(p, p) - pg * pg - rr * gg) <= 0;
  });
}

Region strip_hull(const DirectionV& d, const Qr5& r, const Qr5& L, double margin) {
  XY g = unit(d.generator);
  XY n{-g.y, g.x};
  double a = L.to_double() + margin, b = r.to_double() + margin;
  Region out;
  for (auto [sa, sb] : {std::pair{1, -1}, {1, 1}, {-1, 1}, {-1, -1}})
    out.vertices.push_back(from_cartesian(sa * a * g.x + sb * b * n.x, sa * a * g.y + sb * b * n.y));
  return out;
}

Strip strip_extract(const PenroseTiling& x, const DirectionV& d, const Qr5& r, const Qr5& L) {
  if (r.sign() <= 0 || L.sign() <= 0) throw std::invalid_argument("strip half-width and length must be positive");
  Strip s{d, r, L, {}};
  // tile vertices lie within (2/5) gamma < 1 of their crossing
  for (const RhombTile& t : materialize(x, strip_hull(d, r, L, 1.0))) {
    bool inside = true;
    for (const PointV& v : t.vertices())
      if (!in_strip(v, d, r, L)) {
        inside = false;
        break;
      }
    if (inside) s.tiles.push_back(t);
  }
  return s;
}

bool same_tiles(const std::vector<RhombTile>& a, const std::vector<RhombTile>& b) {
  return a.size() == b.size() && tile_set(a) == tile_set(b);
}

// --------------------------------------------------------- frames

PentagridParams params_in_frame(const PentagridParams& u, int k) {
  std::array<Qr5, 5> raw;
  for (int l = 0; l < 5; ++l) raw[l] = u[(l + k) % 5];
  return make_params(raw);
}

PointV point_in_frame(const PointV& x, int k) { return rotate72(x, -k); }

namespace {

int choose_frame(const DirectionV& d) {
  XY g = unit(d.generator);
  int best = 0;
  double score = -1;
  for (int k = 0; k < 5; ++k) {
    XY a = cart_family(k), b = cart_family(k + 1);
    double s = std::min(std::fabs(g.x * a.x + g.y * a.y), std::fabs(g.x * b.x + g.y * b.y));
    if (s > score + 1e-12) {
      score = s;
      best = k;
    }
  }
  return best;
}

RhombTile tile_in_frame(const RhombTile& t, int k) {
  int i = (t.i - k + 5) % 5, j = (t.j - k + 5) % 5;
  if (i > j) std::swap(i, j);
  return {i, j, point_in_frame(t.anchor, k), t.origin};
}

// Indexes the vertices of the tiles and integrates the cocycle (each edge
// +v'_l is a step +e_l) from the vertex nearest the origin.  Tiles outside
// that vertex's component are dropped.
std::vector<StripTile> integrate_cocycle(const std::vector<RhombTile>& tiles) {
  std::unordered_map<PointV, int, PointVHash> index;
  std::vector<PointV> pts;
  auto id_of = [&](const PointV& p) {
    auto [it, fresh] = index.emplace(p, static_cast<int>(pts.size()));
    if (fresh) pts.push_back(p);
    return it->second;
  };
  struct Edge {
    int to, l, dir;
  };
  std::vector<std::vector<Edge>> adj;
  std::vector<int> anchors;
  for (const RhombTile& t : tiles) {
    auto v = t.vertices();
    int a = id_of(v[0]), b = id_of(v[1]), c = id_of(v[2]), e = id_of(v[3]);
    anchors.push_back(a);
    if (adj.size() < pts.size()) adj.resize(pts.size());
    for (auto [x, y, l] : {std::tuple{a, b, t.i}, {a, e, t.j}, {b, c, t.j}, {e, c, t.i}}) {
      adj[x].push_back({y, l, 1});
      adj[y].push_back({x, l, -1});
    }
  }
  if (pts.empty()) return {};
  int root = 0;
  double best = INFINITY;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    XY c = to_cartesian(pts[k]);
    double n = std::hypot(c.x, c.y);
    if (n < best) {
      best = n;
      root = static_cast<int>(k);
    }
  }
  std::vector<std::optional<IVec5>> m(pts.size());
  m[root] = IVec5{};
  std::queue<int> q;
  q.push(root);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (const Edge& e : adj[x]) {
      IVec5 next = *m[x];
      next[e.l] += e.dir;
      if (!m[e.to]) {
        m[e.to] = next;
        q.push(e.to);
      } else if (*m[e.to] != next) {
        throw ReconstructionError(ReconstructionError::Inconsistent, "tiles do not come from one pentagrid (cocycle mismatch)");
      }
    }
  }
  std::vector<StripTile> out;
  for (std::size_t k = 0; k < tiles.size(); ++k)
    if (m[anchors[k]]) out.push_back({tiles[k], *m[anchors[k]]});
  return out;
}

}  // namespace

// ------------------------------------------------------ reconstruction

PointV Reconstruction::t0_at(const Qr5& u2, const Qr5& u4) const {
  Qr5 u3 = Qr5(carry) - u2 - u4;
  return anchor + two_fifths() * (u2 * basis_vector(2) + u3 * basis_vector(3) + u4 * basis_vector(4));
}

std::string Reconstruction::summary() const {
  std::ostringstream o;
  o << "frame " << frame << ", u2 in " << u2.str() << " (len " << u2.length().to_double() << "), u4 in " << u4.str()
    << " (len " << u4.length().to_double() << "), anchor patch id " << anchor_id << ", rows " << row_lo << ".."
    << row_hi << ", columns " << col_lo << ".." << col_hi << ", " << complete_patches << " complete patches, |t0| <= "
    << t0_norm_max;
  return o.str();
}

Reconstruction reconstruct_from_strip(const Strip& s) {
  const PointV& g = s.direction.generator;
  for (int j = 0; j < 2; ++j)
    if (dot(g, basis_vector(j)).is_zero())
      throw ReconstructionError(ReconstructionError::DegenerateFrame,
                                "degenerate frame: direction is perpendicular to v" + std::to_string(j));
  Reconstruction rec;
  rec.frame = choose_frame(s.direction);
  std::vector<RhombTile> turned;
  turned.reserve(s.tiles.size());
  for (const RhombTile& t : s.tiles) turned.push_back(tile_in_frame(t, rec.frame));
  std::vector<StripTile> tiles = integrate_cocycle(turned);
  rec.tiles_used = tiles.size();

  // patch membership: the crossing lies in the closed rhomb R_n
  std::map<Index2, std::vector<int>> members;
  std::map<Index2, int> corner;  // (base0, base1) of a v0 ^ v1 tile
  for (int k = 0; k < static_cast<int>(tiles.size()); ++k) {
    const RhombTile& t = tiles[k].tile;
    const IVec5& b = tiles[k].base;
    if (t.i == 0 && t.j == 1) corner[{b[0], b[1]}] = k;
    std::array<std::vector<long long>, 2> cand;
    for (int f = 0; f < 2; ++f) {
      cand[f] = {b[f]};
      if (t.i == f || t.j == f) cand[f].push_back(b[f] + 1);
    }
    for (long long n0 : cand[0])
      for (long long n1 : cand[1]) members[{n0, n1}].push_back(k);
  }

  const CanonIndex& canon = canon_index();
  struct Found {
    Index2 n;
    int id;
    PointV d;
  };
  std::vector<Found> found;
  for (const auto& [n, list] : members) {
    bool corners = true;
    for (int a = 0; a < 2 && corners; ++a)
      for (int b = 0; b < 2 && corners; ++b) corners = corner.count({n[0] - 1 + a, n[1] - 1 + b}) > 0;
    if (!corners) continue;
    const StripTile& ll = tiles[corner.at({n[0] - 1, n[1] - 1})];
    IVec5 md = ll.base;
    ++md[0];
    ++md[1];
    PatchKey key;
    for (int k : list) {
      IVec5 d;
      for (int l = 0; l < 5; ++l) d[l] = tiles[k].base[l] - md[l];
      key.push_back({tiles[k].tile.i, tiles[k].tile.j, lattice_sum(d)});
    }
    std::sort(key.begin(), key.end());
    auto it = canon.id.find(key);
    if (it == canon.id.end() || canon.shadowed[it->second]) {
      ++rec.partial_patches;
      continue;
    }
    found.push_back({n, it->second, ll.tile.anchor + edge_vector(0) + edge_vector(1)});
  }
  rec.complete_patches = static_cast<int>(found.size());
  if (found.empty()) throw ReconstructionError(ReconstructionError::CoverageGap, "coverage gap: no complete Wang patch in the strip");

  std::map<long long, int> row, col;
  for (const Found& f : found) {
    Symbol sy = canon.symbol[f.id];
    auto [ri, rnew] = row.emplace(f.n[0], sy.z);
    auto [ci, cnew] = col.emplace(f.n[1], sy.zp);
    if ((!rnew && ri->second != sy.z) || (!cnew && ci->second != sy.zp))
      throw ReconstructionError(ReconstructionError::Inconsistent, "symbols disagree within a row or column");
  }
  auto missing = [](const std::map<long long, int>& m) {
    std::vector<long long> gap;
    long long prev = m.begin()->first;
    for (const auto& [n, z] : m) {
      for (long long k = prev + 1; k < n; ++k) gap.push_back(k);
      prev = n;
    }
    return gap;
  };
  std::vector<long long> mr = missing(row), mc = missing(col);
  if (!mr.empty() || !mc.empty())
    throw ReconstructionError(ReconstructionError::CoverageGap,
                              "coverage gap: rows missing {" + join(mr) + "}, columns missing {" + join(mc) + "}");

  Arc a4, a2;
  try {
    a4 = recover_parameter(std::vector<std::pair<long long, int>>(row.begin(), row.end()));
    a2 = recover_parameter(std::vector<std::pair<long long, int>>(col.begin(), col.end()));
  } catch (const NotSturmian& e) {
    throw ReconstructionError(ReconstructionError::Inconsistent, std::string("symbols are not Sturmian: ") + e.what());
  }

  // anchor: the patch whose fundamental rhomb holds the origin
  const double al = Qr5::alpha().to_double();
  double m4 = (a4.start.to_double() + a4.end.to_double()) / 2, m2 = (a2.start.to_double() + a2.end.to_double()) / 2;
  const Found* pick = nullptr;
  double pick_score = INFINITY;
  XY c2 = cart_family(2), c3 = cart_family(3), c4 = cart_family(4), c0 = cart_family(0), c1 = cart_family(1);
  for (const Found& f : found) {
    XY d = to_cartesian(f.d);
    if (std::hypot(d.x, d.y) > 3) continue;
    int carry = canon.carry[f.id] ? canon.carry[f.id] : 1;
    double w4 = m4 + al * f.n[0], w2 = m2 + al * f.n[1];
    w4 -= std::floor(w4);
    w2 -= std::floor(w2);
    double w3 = carry - w2 - w4;
    XY t{d.x + 0.4 * (w2 * c2.x + w3 * c3.x + w4 * c4.x), d.y + 0.4 * (w2 * c2.y + w3 * c3.y + w4 * c4.y)};
    // -t0 in A-coordinates (v0 . x, v1 . x) must lie in the unit square
    double x = -(t.x * c0.x + t.y * c0.y), y = -(t.x * c1.x + t.y * c1.y);
    double outside = std::max({0.0, -x, x - 1, -y, y - 1});
    double score = outside * 100 + std::hypot(t.x, t.y);
    if (score < pick_score) {
      pick_score = score;
      pick = &f;
    }
  }
  if (!pick) throw ReconstructionError(ReconstructionError::CoverageGap, "coverage gap: no complete patch near the origin");
  if (canon.carry[pick->id] == 0)
    throw ReconstructionError(ReconstructionError::Inconsistent, "anchor cell straddles u2 + u4 = 1");

  rec.anchor_id = pick->id;
  rec.anchor = pick->d;
  rec.carry = canon.carry[pick->id];
  rec.u4 = shift_arc(a4, pick->n[0]);
  rec.u2 = shift_arc(a2, pick->n[1]);
  rec.row_lo = row.begin()->first - pick->n[0];
  rec.row_hi = row.rbegin()->first - pick->n[0];
  rec.col_lo = col.begin()->first - pick->n[1];
  rec.col_hi = col.rbegin()->first - pick->n[1];

  rec.t0_x0 = rec.t0_y0 = INFINITY;
  rec.t0_x1 = rec.t0_y1 = -INFINITY;
  for (const auto& [s2, e2] : arc_pieces(rec.u2))
    for (const auto& [s4, e4] : arc_pieces(rec.u4))
      for (const Qr5& w2 : {s2, e2})
        for (const Qr5& w4 : {s4, e4}) {
          XY t = to_cartesian(rec.t0_at(w2, w4));
          rec.t0_x0 = std::min(rec.t0_x0, t.x);
          rec.t0_x1 = std::max(rec.t0_x1, t.x);
          rec.t0_y0 = std::min(rec.t0_y0, t.y);
          rec.t0_y1 = std::max(rec.t0_y1, t.y);
          rec.t0_norm_max = std::max(rec.t0_norm_max, std::hypot(t.x, t.y));
        }
  return rec;
}

std::string TruthCheck::summary() const {
  std::ostringstream o;
  o << (found ? "anchor found" : "anchor NOT found") << ", u2 " << (u2_inside ? "inside" : "OUTSIDE") << ", u4 "
    << (u4_inside ? "inside" : "OUTSIDE") << ", carry " << (carry_ok ? "ok" : "WRONG") << ", t0 "
    << (shift_exact ? "exact" : "WRONG") << ", |t0| " << (norm_below ? "< 4/3" : ">= 4/3");
  return o.str();
}

TruthCheck check_reconstruction(const PenroseTiling& x, const Reconstruction& r) {
  TruthCheck c;
  PentagridParams u = params_in_frame(translate_params(x.params, x.shift), r.frame);
  Qr5 g0 = dot_family(0, r.anchor) + u[0], g1 = dot_family(1, r.anchor) + u[1];
  long long c0 = std::llround(g0.to_double()), c1 = std::llround(g1.to_double());
  for (long long n0 = c0 - 2; n0 <= c0 + 2 && !c.found; ++n0)
    for (long long n1 = c1 - 2; n1 <= c1 + 2 && !c.found; ++n1) {
      try {
        if (corner_dual(u, {n0, n1}) == r.anchor) {
          c.found = true;
          c.n = {n0, n1};
        }
      } catch (const std::invalid_argument&) {
      }
    }
  if (!c.found) return c;
  c.t0 = rhomb_corner(u, c.n);
  PentagridParams u0 = translate_params(u, c.t0);
  c.u2 = u0[2];
  c.u4 = u0[4];
  c.u2_inside = r.u2.contains(c.u2);
  c.u4_inside = r.u4.contains(c.u4);
  c.carry_ok = u0[3] == Qr5(r.carry) - c.u2 - c.u4;
  c.shift_exact = r.t0_at(c.u2, c.u4) == c.t0;
  c.norm_below = dot(c.t0, c.t0) < Qr5(Rational(16, 9));
  return c;
}

// ------------------------------------------------------------- worms

Qr5 decagon_diameter() { return two_fifths() * (Qr5(1) + Qr5::sqrt5()); }

std::vector<FilledHexagon> filled_hexagons(const std::vector<RhombTile>& tiles) {
  std::unordered_map<PointV, std::vector<std::pair<int, int>>, PointVHash> at;
  for (int k = 0; k < static_cast<int>(tiles.size()); ++k) {
    auto v = tiles[k].vertices();
    for (int c = 0; c < 4; ++c) at[v[c]].push_back({k, c});
  }
  std::vector<FilledHexagon> out;
  for (const auto& [p, list] : at) {
    if (list.size() != 3) continue;
    int angle = 0;
    unsigned mask = 0;
    for (auto [k, c] : list) {
      angle += corner_angle(tiles[k], c);
      mask |= (1u << tiles[k].i) | (1u << tiles[k].j);
    }
    if (angle != 10 || std::popcount(mask) != 3) continue;
    FilledHexagon h;
    int f = 0;
    for (int l = 0; l < 5; ++l)
      if ((mask >> l) & 1) h.families[f++] = l;
    h.spine = spine_family(static_cast<std::uint8_t>(mask));
    for (auto [k, c] : list) h.tiles.push_back(tiles[k]);
    // with S the sum of the three edges leaving p, the far corners sum to
    // 3p + 2S and the centre is p + S/2
    PointV far;
    for (auto [k, c] : list) far += tiles[k].vertices()[(c + 2) % 4];
    PointV centre = p + Qr5(Rational(1, 4)) * (far - Qr5(3) * p);
    h.center = centre;
    for (const RhombTile& t : h.tiles)
      if (t.i != h.spine && t.j != h.spine) {
        PointV mid = t.anchor + Qr5(Rational(1, 2)) * (edge_vector(t.i) + edge_vector(t.j));
        h.sign = sign(dot_family(h.spine, mid - centre));
      }
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const FilledHexagon& a, const FilledHexagon& b) {
    XY x = to_cartesian(a.center), y = to_cartesian(b.center);
    return std::pair{x.x, x.y} < std::pair{y.x, y.y};
  });
  return out;
}

std::string WormReading::summary() const {
  std::ostringstream o;
  o << hexagons_seen << " filled hexagons, parameter region of " << region.size() << " piece(s), "
    << candidates.size() << " worm candidate(s)";
  for (const WormCandidate& c : candidates)
    o << "; spine " << c.spine << " filling " << (c.sign > 0 ? "+" : c.sign < 0 ? "-" : "mixed") << " ("
      << c.hexagons.size() << " hexagons)";
  return o.str();
}

namespace {

using Poly = std::vector<UV>;

Qr5 orient(const UV& a, const UV& b, const UV& c) {
  return (b.u2 - a.u2) * (c.u4 - a.u4) - (b.u4 - a.u4) * (c.u2 - a.u2);
}

// Keeps the part of a convex polygon on the left of (or on) every edge of
// the counterclockwise convex polygon q.
Poly clip(Poly p, const Poly& q) {
  for (std::size_t e = 0; e < q.size() && !p.empty(); ++e) {
    const UV& a = q[e];
    const UV& b = q[(e + 1) % q.size()];
    Poly out;
    for (std::size_t k = 0; k < p.size(); ++k) {
      const UV& x = p[k];
      const UV& y = p[(k + 1) % p.size()];
      Qr5 sx = orient(a, b, x), sy = orient(a, b, y);
      if (sx.sign() >= 0) out.push_back(x);
      if ((sx.sign() > 0 && sy.sign() < 0) || (sx.sign() < 0 && sy.sign() > 0)) {
        Qr5 t = sx / (sx - sy);
        out.push_back({x.u2 + t * (y.u2 - x.u2), x.u4 + t * (y.u4 - x.u4)});
      }
    }
    Poly dedup;
    for (const UV& v : out)
      if (dedup.empty() || !(dedup.back() == v)) dedup.push_back(v);
    while (dedup.size() > 1 && dedup.front() == dedup.back()) dedup.pop_back();
    p = std::move(dedup);
  }
  return p;
}

bool has_area(const Poly& p) {
  for (std::size_t k = 2; k < p.size(); ++k)
    if (orient(p[0], p[1], p[k]).sign() != 0) return true;
  return false;
}

struct Box {
  double x0, x1, y0, y1;
};
Box bbox(const Poly& p) {
  Box b{INFINITY, -INFINITY, INFINITY, -INFINITY};
  for (const UV& v : p) {
    double x = v.u2.to_double(), y = v.u4.to_double();
    b = {std::min(b.x0, x), std::max(b.x1, x), std::min(b.y0, y), std::max(b.y1, y)};
  }
  return b;
}

}  // namespace

WormReading read_worm(const Strip& s, const Reconstruction& r) {
  WormReading out;
  std::vector<RhombTile> turned;
  for (const RhombTile& t : s.tiles) turned.push_back(tile_in_frame(t, r.frame));
  std::vector<StripTile> tiles = integrate_cocycle(turned);
  std::unordered_map<PointV, IVec5, PointVHash> m_at;
  for (const StripTile& t : tiles) m_at[t.tile.anchor] = t.base;
  auto ll = m_at.find(r.anchor - edge_vector(0) - edge_vector(1));
  if (ll == m_at.end()) return out;
  // absolute cocycle: d_{n_a} is the cell m = 0 of the normal form
  IVec5 m0 = ll->second;
  m0[0] += 1;
  m0[1] += 1;

  // parameter region: the arc box cut by the cell of every complete patch
  std::vector<Poly> region;
  for (const auto& [s2, e2] : arc_pieces(r.u2))
    for (const auto& [s4, e4] : arc_pieces(r.u4)) region.push_back({{s2, s4}, {e2, s4}, {e2, e4}, {s2, e4}});
  {
    const CanonIndex& canon = canon_index();
    const auto& faces = arrangement_faces();
    std::map<Index2, int> corner_base;
    for (const StripTile& t : tiles)
      if (t.tile.i == 0 && t.tile.j == 1) corner_base[{t.base[0] - m0[0] + 1, t.base[1] - m0[1] + 1}] = 1;
    // rebuild patches exactly as the reconstruction does
    std::map<Index2, std::vector<int>> members;
    for (int k = 0; k < static_cast<int>(tiles.size()); ++k) {
      const RhombTile& t = tiles[k].tile;
      IVec5 b = tiles[k].base;
      for (int l = 0; l < 5; ++l) b[l] -= m0[l];
      std::array<std::vector<long long>, 2> cand;
      for (int f = 0; f < 2; ++f) {
        cand[f] = {b[f]};
        if (t.i == f || t.j == f) cand[f].push_back(b[f] + 1);
      }
      for (long long n0 : cand[0])
        for (long long n1 : cand[1]) members[{n0, n1}].push_back(k);
    }
    for (const auto& [n, list] : members) {
      bool corners = true;
      for (int a = 0; a < 2 && corners; ++a)
        for (int b = 0; b < 2 && corners; ++b) corners = corner_base.count({n[0] + a, n[1] + b}) > 0;
      if (!corners) continue;
      IVec5 md{};
      for (int k : list)
        if (tiles[k].tile.i == 0 && tiles[k].tile.j == 1 && tiles[k].base[0] - m0[0] == n[0] - 1 &&
            tiles[k].base[1] - m0[1] == n[1] - 1) {
          md = tiles[k].base;
          ++md[0];
          ++md[1];
        }
      PatchKey key;
      for (int k : list) {
        IVec5 d;
        for (int l = 0; l < 5; ++l) d[l] = tiles[k].base[l] - md[l];
        key.push_back({tiles[k].tile.i, tiles[k].tile.j, lattice_sum(d)});
      }
      std::sort(key.begin(), key.end());
      auto it = canon.id.find(key);
      if (it == canon.id.end() || canon.shadowed[it->second]) continue;
      // the patch reads (u2 + n1 alpha, u4 + n0 alpha) mod 1
      Qr5 o2 = (Qr5(n[1]) * Qr5::alpha()).frac(), o4 = (Qr5(n[0]) * Qr5::alpha()).frac();
      std::vector<Poly> cell;
      for (int f : canon_24()[it->second].faces)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            Poly q;
            for (const UV& v : faces[f]) q.push_back({v.u2 - o2 + Qr5(a), v.u4 - o4 + Qr5(b)});
            cell.push_back(std::move(q));
          }
      std::vector<Poly> next;
      for (const Poly& p : region) {
        Box pb = bbox(p);
        for (const Poly& q : cell) {
          Box qb = bbox(q);
          if (qb.x0 > pb.x1 + 1e-9 || qb.x1 < pb.x0 - 1e-9 || qb.y0 > pb.y1 + 1e-9 || qb.y1 < pb.y0 - 1e-9) continue;
          Poly c = clip(p, q);
          if (!c.empty()) next.push_back(std::move(c));
        }
      }
      // slivers along shared edges add nothing once an area piece exists
      bool area = std::any_of(next.begin(), next.end(), has_area);
      if (area) next.erase(std::remove_if(next.begin(), next.end(), [](const Poly& p) { return !has_area(p); }), next.end());
      if (next.empty()) return out;
      region = std::move(next);
    }
  }
  out.region = region;

  std::vector<RhombTile> kept;
  for (const StripTile& t : tiles) kept.push_back(t.tile);
  // concurrency defect of the three lines, as an affine function of (u2, u4)
  struct Line {
    Qr5 c, a, b;  // c + a u2 + b u4
  };
  auto defect = [&](const FilledHexagon& h) -> std::optional<Line> {
    std::array<long long, 5> k{};
    for (const RhombTile& t : h.tiles) {
      auto it = m_at.find(t.anchor);
      if (it == m_at.end()) return std::nullopt;
      for (int l : {t.i, t.j}) k[l] = it->second[l] - m0[l] + 1;
    }
    int a = -1, b = -1;
    for (int l : h.families)
      if (l != h.spine) (a < 0 ? a : b) = l;
    auto value = [&](const Qr5& u2, const Qr5& u4) {
      std::array<Qr5, 5> u{Qr5(0), Qr5(0), u2, Qr5(r.carry) - u2 - u4, u4};
      PointV y = solve_pair(a, b, Qr5(k[a]) - u[a], Qr5(k[b]) - u[b]);
      return dot_family(h.spine, y) + u[h.spine] - Qr5(k[h.spine]);
    };
    Qr5 c = value(0, 0);
    return Line{c, value(1, 0) - c, value(0, 1) - c};
  };
  struct Group {
    Line line;
    WormCandidate cand;
  };
  std::vector<Group> groups;
  std::vector<FilledHexagon> hexes = filled_hexagons(kept);
  out.hexagons_seen = static_cast<int>(hexes.size());
  for (FilledHexagon& h : hexes) {
    std::optional<Line> d = defect(h);
    if (!d) continue;
    int lo = 1, hi = -1;
    for (const Poly& p : region)
      for (const UV& v : p) {
        int sg = (d->c + d->a * v.u2 + d->b * v.u4).sign();
        lo = std::min(lo, sg);
        hi = std::max(hi, sg);
      }
    // a worm's lines meet exactly on the boundary of the region, never across it
    if (lo > 0 || hi < 0 || (lo < 0 && hi > 0)) continue;
    Qr5 lead = !d->a.is_zero() ? d->a : d->b;
    if (lead.is_zero()) continue;
    Line n{d->c / lead, d->a / lead, d->b / lead};
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& gr) {
      return gr.cand.spine == h.spine && gr.line.c == n.c && gr.line.a == n.a && gr.line.b == n.b;
    });
    if (it == groups.end()) {
      groups.push_back({n, {h.spine, h.sign, {}}});
      it = groups.end() - 1;
    }
    if (it->cand.sign != h.sign) it->cand.sign = 0;
    it->cand.hexagons.push_back(std::move(h));
  }
  for (Group& gr : groups) {
    gr.cand.spine = (gr.cand.spine + r.frame) % 5;
    for (FilledHexagon& h : gr.cand.hexagons) {
      for (int& f : h.families) f = (f + r.frame) % 5;
      std::sort(h.families.begin(), h.families.end());
      h.spine = (h.spine + r.frame) % 5;
      h.center = rotate72(h.center, r.frame);
      for (RhombTile& t : h.tiles) {
        int i = (t.i + r.frame) % 5, j = (t.j + r.frame) % 5;
        t = {std::min(i, j), std::max(i, j), rotate72(t.anchor, r.frame), t.origin};
      }
    }
    out.candidates.push_back(std::move(gr.cand));
  }
  return out;
}

// ------------------------------------------------------------ directions

DirectionClass classify_direction(const DirectionV& d) {
  if (d.generator.p.is_zero() && d.generator.q.is_zero()) throw std::invalid_argument("direction generator is zero");
  for (int j = 0; j < 5; ++j)
    if (dot(d.generator, basis_vector(j)).is_zero()) return NonExpansive{j};
  return Expansive{};
}

DirectionClass classify_lattice_slope(const std::optional<Qr5>& slope) {
  LatticeVec g = slope ? LatticeVec{Qr5(1), *slope} : LatticeVec{Qr5(0), Qr5(1)};
  return classify_direction(to_tiling(g));
}

std::string class_string(const DirectionClass& c) {
  if (const auto* n = std::get_if<NonExpansive>(&c)) return "non-expansive (perpendicular to v" + std::to_string(n->j) + ")";
  return "expansive";
}

// -------------------------------------------------- worm counterexamples

std::string WormAudit::summary() const {
  std::ostringstream o;
  o << "strips " << (strips_equal ? "equal" : "DIFFER") << " (" << strip_tiles << " tiles), tilings "
    << (tilings_differ ? "differ" : "AGREE") << " on " << differing_tiles << " tiles, max distance to spine "
    << max_spine_distance << " (bound " << spine_bound << "), spine offset " << spine_offset;
  return o.str();
}

WormCounterexample worm_flip_counterexample(int j, const Qr5& r, long long window_radius) {
  if (j < 0 || j > 4) throw std::invalid_argument("family index must be 0..4");
  // spine l_{3,0} in the base worm; relabel so the spine is family j
  PentagridParams base = make_params({0, 0, Qr5(Rational(1, 3)), 0, Qr5(Rational(2, 3))});
  std::array<Qr5, 5> raw;
  for (int l = 0; l < 5; ++l) raw[l] = base[(l + 3 - j + 5) % 5];
  Qr5 d = r + Qr5(5);
  PentagridParams u = translate_params(make_params(raw), -(d * basis_vector(j)));

  WormCounterexample w;
  w.j = j;
  w.plus = {u, WormFill{1}, {}};
  w.minus = {u, WormFill{-1}, {}};
  Window win = Window::around({}, Qr5(window_radius));
  ScanResult scan = singularity_scan(u, win.shrunk(Qr5(-kMaterializeMargin)).region());
  const Worm* worm = std::get_if<Worm>(&scan);
  if (!worm || worm->spine.j != j) throw std::logic_error("worm construction failed: " + describe(scan));
  w.spine = worm->spine;

  DirectionV dir = DirectionV::perp(j);
  Qr5 L(window_radius);
  auto run = [&](const PenroseTiling& x) { return std::pair{strip_extract(x, dir, r, L), materialize(x, win)}; };
  auto fut = std::async(std::launch::async, run, w.minus);
  auto [sp, tp] = run(w.plus);
  auto [sm, tm] = fut.get();

  WormAudit& a = w.audit;
  a.strips_equal = same_tiles(sp.tiles, sm.tiles);
  a.strip_tiles = sp.tiles.size();
  TileSet setp = tile_set(tp), setm = tile_set(tm);
  std::vector<RhombTile> diff;
  for (const RhombTile& t : tp)
    if (!setm.count(t)) diff.push_back(t);
  for (const RhombTile& t : tm)
    if (!setp.count(t)) diff.push_back(t);
  a.differing_tiles = diff.size();
  a.tilings_differ = !diff.empty();
  const double k = static_cast<double>(w.spine.k), uj = u[j].to_double();
  for (const RhombTile& t : diff)
    for (const PointV& v : t.vertices())
      a.max_spine_distance = std::max(a.max_spine_distance, std::fabs(dot_family(j, v).to_double() + uj - k));
  a.spine_bound = 2.0 / 3.0 + 0.8 * std::cos(M_PI / 10);
  a.spine_offset = std::fabs(k - uj);
  return w;
}

}  // namespace penrose
