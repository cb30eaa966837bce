#include "penrose/pentagrid.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace penrose {

namespace {

// v_l = P[i][j][l] v_i + Q[i][j][l] v_j, and the dual basis {w_i, w_j} of
// {v_i, v_j}: v_i . w_i = 1, v_j . w_i = 0.
struct ExactTables {
  Qr5 P[5][5][5];
  Qr5 Q[5][5][5];
  PointV w[5][5][2];
};

Qr5 det(const PointV& x, const PointV& y) { return x.p * y.q - x.q * y.p; }

const ExactTables& exact_tables() {
  static const ExactTables t = [] {
    ExactTables t;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        const PointV &vi = basis_vector(i), &vj = basis_vector(j);
        Qr5 d = det(vi, vj);
        for (int l = 0; l < 5; ++l) {
          t.P[i][j][l] = det(basis_vector(l), vj) / d;
          t.Q[i][j][l] = det(vi, basis_vector(l)) / d;
        }
        // Gram system rows (v_i . v0, v_i . v1) and (v_j . v0, v_j . v1)
        Qr5 a = gram(i, 0), b = gram(i, 1), c = gram(j, 0), e = gram(j, 1);
        Qr5 g = a * e - b * c;
        t.w[i][j][0] = PointV{e / g, -c / g};
        t.w[i][j][1] = PointV{-b / g, a / g};
      }
    return t;
  }();
  return t;
}

template <class S>
struct Tables {
  S P[5][5][5];
  S Q[5][5][5];
  Vec2<S> w[5][5][2];
};

template <class S>
const Tables<S>& tables() {
  static const Tables<S> t = [] {
    const ExactTables& e = exact_tables();
    Tables<S> t;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        if (i == j) continue;
        for (int l = 0; l < 5; ++l) {
          t.P[i][j][l] = lift<S>(e.P[i][j][l]);
          t.Q[i][j][l] = lift<S>(e.Q[i][j][l]);
        }
        t.w[i][j][0] = lift<S>(e.w[i][j][0]);
        t.w[i][j][1] = lift<S>(e.w[i][j][1]);
      }
    return t;
  }();
  return t;
}

int lowest_bit(unsigned m) { return std::countr_zero(m); }

// Membership rule for the closed region being enumerated.
struct RhombCell {
  Index2 n;
};

template <class S>
struct Context {
  std::array<S, 5> u;
  std::vector<Vec2<S>> poly;  // empty when enumerating a rhomb cell
};

template <class S>
Context<S> make_context(const PentagridParams& u, const Region* region) {
  Context<S> c;
  for (int j = 0; j < 5; ++j) c.u[j] = lift<S>(u[j]);
  if (region)
    for (const PointV& v : region->vertices) c.poly.push_back(lift<S>(v));
  return c;
}

template <class S>
bool in_polygon(const std::vector<Vec2<S>>& poly, const Vec2<S>& x) {
  for (std::size_t a = 0; a < poly.size(); ++a) {
    const Vec2<S>& p = poly[a];
    const Vec2<S>& q = poly[(a + 1) % poly.size()];
    if (cross_sign(q - p, x - p) < 0) return false;
  }
  return true;
}

long long floor_value(const Qr5& v, bool& on_line) {
  on_line = v.is_integer();
  return v.floor();
}

long long floor_value(const Approx& v, bool& on_line) {
  on_line = false;
  return floor_int(v);  // throws near integers, which covers the on-line case
}

// Analyzes the crossing of l_{i,ki} and l_{j,kj}.  Returns false when the
// crossing is outside the region or when (i, j) is not the lowest incident
// pair (the crossing is then reported through that pair instead).
template <class S>
bool analyze(const Context<S>& ctx, const RhombCell* cell, int i, long long ki, int j, long long kj,
             CrossingCode& out) {
  const Tables<S>& t = tables<S>();
  S ri = S(ki) - ctx.u[i];
  S rj = S(kj) - ctx.u[j];
  out.mask = static_cast<std::uint8_t>((1u << i) | (1u << j));
  out.base[i] = ki - 1;
  out.base[j] = kj - 1;
  for (int l = 0; l < 5; ++l) {
    if (l == i || l == j) continue;
    S val = t.P[i][j][l] * ri + t.Q[i][j][l] * rj + ctx.u[l];
    bool on = false;
    long long f = floor_value(val, on);
    if (on) {
      out.mask |= static_cast<std::uint8_t>(1u << l);
      out.base[l] = f - 1;
    } else {
      out.base[l] = f;
    }
  }
  unsigned m = out.mask;
  int first = lowest_bit(m);
  int second = lowest_bit(m & (m - 1));
  if (first != i || second != j) return false;
  if (cell) {
    for (int f = 0; f < 2; ++f) {
      long long lo = cell->n[f];
      bool inside = out.incident(f) ? (out.base[f] == lo - 1 || out.base[f] == lo) : out.base[f] == lo;
      if (!inside) return false;
    }
    return true;
  }
  Vec2<S> x = ri * t.w[i][j][0] + rj * t.w[i][j][1];
  return in_polygon(ctx.poly, x);
}

struct Harvest {
  // Candidate (ki, kj) ranges per family pair, generated in floating point
  // with a safety margin.  Exact decisions are made by analyze().
  std::vector<std::array<long long, 4>> candidates;  // i, ki, j, kj
};

const double kC[5] = {1, std::cos(2 * M_PI / 5), std::cos(4 * M_PI / 5), std::cos(6 * M_PI / 5),
                      std::cos(8 * M_PI / 5)};
const double kS[5] = {0, std::sin(2 * M_PI / 5), std::sin(4 * M_PI / 5), std::sin(6 * M_PI / 5),
                      std::sin(8 * M_PI / 5)};

template <class Emit>
void harvest_polygon(const PentagridParams& u, const Region& region, Emit&& emit) {
  const double tol = 1e-6;
  std::vector<XY> poly;
  for (const PointV& v : region.vertices) poly.push_back(to_cartesian(v));
  double ud[5];
  for (int j = 0; j < 5; ++j) ud[j] = u[j].to_double();
  auto value = [&](int j, double x, double y) { return kC[j] * x + kS[j] * y + ud[j]; };
  for (int i = 0; i < 5; ++i) {
    double lo = INFINITY, hi = -INFINITY;
    for (const XY& p : poly) {
      double v = value(i, p.x, p.y);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    for (long long ki = static_cast<long long>(std::ceil(lo - tol)); ki <= static_cast<long long>(std::floor(hi + tol));
         ++ki) {
      // line: X = (ki - u_i) n_i + t n_i^perp
      double r = ki - ud[i];
      double x0 = r * kC[i], y0 = r * kS[i];
      double dx = -kS[i], dy = kC[i];
      double tlo = -INFINITY, thi = INFINITY;
      bool empty = false;
      for (std::size_t a = 0; a < poly.size() && !empty; ++a) {
        const XY& p = poly[a];
        const XY& q = poly[(a + 1) % poly.size()];
        double ex = q.x - p.x, ey = q.y - p.y;
        double len = std::hypot(ex, ey);
        // cross(e, X - p) / |e| >= -tol
        double c0 = (ex * (y0 - p.y) - ey * (x0 - p.x)) / len + tol;
        double c1 = (ex * dy - ey * dx) / len;
        if (std::fabs(c1) < 1e-15) {
          if (c0 < 0) empty = true;
        } else if (c1 > 0) {
          tlo = std::max(tlo, -c0 / c1);
        } else {
          thi = std::min(thi, -c0 / c1);
        }
      }
      if (empty || tlo > thi) continue;
      for (int j = i + 1; j < 5; ++j) {
        double a = value(j, x0 + tlo * dx, y0 + tlo * dy);
        double b = value(j, x0 + thi * dx, y0 + thi * dy);
        long long k0 = static_cast<long long>(std::ceil(std::min(a, b) - tol));
        long long k1 = static_cast<long long>(std::floor(std::max(a, b) + tol));
        for (long long kj = k0; kj <= k1; ++kj) emit(i, ki, j, kj);
      }
    }
  }
}

template <class Emit>
void harvest_rhomb(const PentagridParams& u, const Index2& n, Emit&& emit) {
  const ExactTables& t = exact_tables();
  std::array<std::vector<long long>, 5> K;
  for (int f = 0; f < 2; ++f) K[f] = {n[f], n[f] + 1};
  double ud[5];
  for (int j = 0; j < 5; ++j) ud[j] = u[j].to_double();
  for (int l = 2; l < 5; ++l) {
    double P = t.P[0][1][l].to_double(), Q = t.Q[0][1][l].to_double();
    double lo = INFINITY, hi = -INFINITY;
    for (int cx = 0; cx < 2; ++cx)
      for (int cy = 0; cy < 2; ++cy) {
        double v = P * (n[0] + cx - ud[0]) + Q * (n[1] + cy - ud[1]) + ud[l];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    for (long long k = static_cast<long long>(std::ceil(lo - 1e-9)); k <= static_cast<long long>(std::floor(hi + 1e-9));
         ++k)
      K[l].push_back(k);
  }
  for (int i = 0; i < 5; ++i)
    for (int j = i + 1; j < 5; ++j)
      for (long long ki : K[i])
        for (long long kj : K[j]) emit(i, ki, j, kj);
}

template <class Harvester>
std::vector<CrossingCode> run(const PentagridParams& u, const Region* region, const RhombCell* cell,
                              Harvester&& harvester) {
  Context<Approx> ca = make_context<Approx>(u, region);
  std::optional<Context<Qr5>> ce;
  std::vector<CrossingCode> out;
  harvester([&](int i, long long ki, int j, long long kj) {
    CrossingCode c;
    bool keep;
    try {
      keep = analyze(ca, cell, i, ki, j, kj, c);
    } catch (const Uncertain&) {
      if (!ce) ce = make_context<Qr5>(u, region);
      keep = analyze(*ce, cell, i, ki, j, kj, c);
    }
    if (keep) out.push_back(c);
  });
  return out;
}

}  // namespace

int CrossingCode::multiplicity() const { return std::popcount(static_cast<unsigned>(mask)); }

std::vector<GridLine> CrossingCode::lines() const {
  std::vector<GridLine> r;
  for (int j = 0; j < 5; ++j)
    if (incident(j)) r.push_back({j, base[j] + 1});
  return r;
}

PentagridParams make_params(const std::array<Qr5, 5>& raw) {
  PentagridParams p;
  Qr5 sum;
  for (int j = 0; j < 5; ++j) {
    p.u[j] = raw[j].frac();
    sum += p.u[j];
  }
  if (!sum.is_integer())
    throw ParamError("offsets are not in T^5_0: fractional part of the sum is " + sum.frac().str());
  return p;
}

PentagridParams normal_form_params(const Qr5& u2, const Qr5& u4) {
  return make_params({0, 0, u2, -(u2 + u4), u4});
}

PentagridParams translate_params(const PentagridParams& u, const PointV& t) {
  std::array<Qr5, 5> raw;
  for (int j = 0; j < 5; ++j) raw[j] = u[j] + dot_family(j, t);
  return make_params(raw);
}

IVec5 cocycle_m(const PointV& s, const PentagridParams& u) {
  IVec5 m{};
  std::string on;
  for (int j = 0; j < 5; ++j) {
    Qr5 v = dot_family(j, s) + u[j];
    if (v.is_integer()) on += " l_{" + std::to_string(j) + "," + v.a().str() + "}";
    m[j] = v.floor();
  }
  if (!on.empty()) throw std::domain_error("point lies on grid line(s):" + on);
  return m;
}

PointV solve_pair(int i, int j, const Qr5& ri, const Qr5& rj) {
  const ExactTables& t = exact_tables();
  return ri * t.w[i][j][0] + rj * t.w[i][j][1];
}

PointV crossing_point(const CrossingCode& c, const PentagridParams& u) {
  unsigned m = c.mask;
  int i = lowest_bit(m);
  int j = lowest_bit(m & (m - 1));
  const ExactTables& t = exact_tables();
  Qr5 ri = Qr5(c.base[i] + 1) - u[i];
  Qr5 rj = Qr5(c.base[j] + 1) - u[j];
  return ri * t.w[i][j][0] + rj * t.w[i][j][1];
}

Crossing to_crossing(const CrossingCode& c, const PentagridParams& u) {
  return {crossing_point(c, u), c.lines(), c.multiplicity()};
}

Region Region::translated(const PointV& t) const {
  Region r;
  for (const PointV& v : vertices) r.vertices.push_back(v + t);
  return r;
}

Region Region::rotated72(int times) const {
  Region r;
  for (const PointV& v : vertices) r.vertices.push_back(rotate72(v, times));
  return r;
}

bool Region::contains(const PointV& x) const {
  return filtered([&](auto tag) {
    using S = decltype(tag);
    std::vector<Vec2<S>> poly;
    for (const PointV& v : vertices) poly.push_back(lift<S>(v));
    return in_polygon(poly, lift<S>(x));
  });
}

Window Window::around(const PointV& c, const Qr5& h) { return {c.p - h, c.p + h, c.q - h, c.q + h}; }

Region Window::region() const { return {{PointV{p0, q0}, PointV{p1, q0}, PointV{p1, q1}, PointV{p0, q1}}}; }

Window Window::translated(const PointV& t) const { return {p0 + t.p, p1 + t.p, q0 + t.q, q1 + t.q}; }

Window Window::shrunk(const Qr5& d) const { return {p0 + d, p1 - d, q0 + d, q1 - d}; }

PointV Window::center() const { return {(p0 + p1) * Qr5(Rational(1, 2)), (q0 + q1) * Qr5(Rational(1, 2))}; }

std::vector<CrossingCode> enumerate_crossings(const PentagridParams& u, const Region& region) {
  return run(u, &region, nullptr, [&](auto&& emit) { harvest_polygon(u, region, emit); });
}

std::vector<Crossing> crossings_in_window(const PentagridParams& u, const Window& w) {
  std::vector<Crossing> r;
  for (const CrossingCode& c : enumerate_crossings(u, w.region())) r.push_back(to_crossing(c, u));
  return r;
}

const FundamentalBasis& fundamental_basis() {
  static const FundamentalBasis b = [] {
    const ExactTables& t = exact_tables();
    // f1 is dual to v0 and f0 is dual to v1 in the pair (0, 1)
    return FundamentalBasis{t.w[0][1][1], t.w[0][1][0]};
  }();
  return b;
}

PointV apply_A(const Qr5& x, const Qr5& y) {
  const FundamentalBasis& f = fundamental_basis();
  return x * f.f1 + y * f.f0;
}

PointV rhomb_corner(const PentagridParams& u, const Index2& n) {
  return apply_A(Qr5(n[0]) - u[0], Qr5(n[1]) - u[1]);
}

Region rhomb_region(const PentagridParams& u, const Index2& n) {
  const FundamentalBasis& f = fundamental_basis();
  PointV b = rhomb_corner(u, n);
  return {{b, b + f.f1, b + f.f1 + f.f0, b + f.f0}};
}

std::vector<CrossingCode> crossings_in_rhomb(const PentagridParams& u, const Index2& n) {
  RhombCell cell{n};
  return run(u, nullptr, &cell, [&](auto&& emit) { harvest_rhomb(u, n, emit); });
}

int lines_through_rhomb(const std::vector<CrossingCode>& rhomb_crossings, int j) {
  std::set<long long> ks;
  for (const CrossingCode& c : rhomb_crossings)
    if (c.incident(j)) ks.insert(c.base[j] + 1);
  return static_cast<int>(ks.size());
}

GridPatch grid_patch(const PentagridParams& u, const Index2& n) {
  GridPatch g;
  g.n = n;
  std::vector<CrossingCode> codes = crossings_in_rhomb(u, n);
  std::map<IVec5, std::vector<PointV>> cells;
  for (const CrossingCode& c : codes) {
    Crossing x = to_crossing(c, u);
    for (std::uint8_t d : cell_cycle(c.mask)) {
      IVec5 m = c.base;
      for (int l = 0; l < 5; ++l)
        if ((d >> l) & 1) ++m[l];
      if (m[0] == n[0] && m[1] == n[1]) cells[m].push_back(x.point);
    }
    g.crossings.push_back(std::move(x));
  }
  for (auto& [m, pts] : cells) {
    PointV s;
    for (const PointV& p : pts) s += p;
    Qr5 inv = Qr5(Rational(1, static_cast<long long>(pts.size())));
    g.cells.push_back({m, inv * s});
  }
  return g;
}

int spine_family(std::uint8_t mask) {
  if (std::popcount(static_cast<unsigned>(mask)) != 3) return -1;
  for (int j = 0; j < 5; ++j) {
    if (!((mask >> j) & 1)) continue;
    unsigned rest = mask & ~(1u << j);
    unsigned narrow = (1u << ((j + 1) % 5)) | (1u << ((j + 4) % 5));
    unsigned wide = (1u << ((j + 2) % 5)) | (1u << ((j + 3) % 5));
    if (rest == narrow || rest == wide) return j;
  }
  return -1;
}

ScanResult singularity_scan(const std::vector<CrossingCode>& crossings, const PentagridParams& u) {
  std::set<GridLine> spines;
  for (const CrossingCode& c : crossings) {
    int m = c.multiplicity();
    if (m == 5) return Cartwheel{crossing_point(c, u)};
    if (m == 4) throw std::logic_error("4-fold crossing: offsets are not in T^5_0");
    if (m == 3) {
      int j = spine_family(c.mask);
      spines.insert({j, c.base[j] + 1});
    }
  }
  if (spines.empty()) return Nonsingular{};
  if (spines.size() == 1) return Worm{*spines.begin()};
  // Several spines: they must all pass through one 5-fold crossing.
  auto it = spines.begin();
  GridLine a = *it++;
  GridLine b = *it;
  if (a.j == b.j) throw std::logic_error("3-fold crossings on two parallel spines");
  CrossingCode c;
  c.mask = static_cast<std::uint8_t>((1u << a.j) | (1u << b.j));
  c.base[a.j] = a.k - 1;
  c.base[b.j] = b.k - 1;
  PointV center = crossing_point(c, u);
  for (int l = 0; l < 5; ++l)
    if (!(dot_family(l, center) + u[l]).is_integer())
      throw std::logic_error("3-fold crossings on two non-concurrent spines");
  for (const GridLine& s : spines)
    if (!(dot_family(s.j, center) + u[s.j] == Qr5(s.k))) throw std::logic_error("3-fold crossings on non-concurrent spines");
  return Cartwheel{center};
}

ScanResult singularity_scan(const PentagridParams& u, const Region& region) {
  return singularity_scan(enumerate_crossings(u, region), u);
}

const std::vector<std::uint8_t>& cell_cycle(std::uint8_t mask) {
  static const std::array<std::vector<std::uint8_t>, 32> cycles = [] {
    std::array<std::vector<std::uint8_t>, 32> all;
    for (unsigned mask = 0; mask < 32; ++mask) {
      if (std::popcount(mask) < 2) continue;
      std::vector<PointV> rays;
      for (int l = 0; l < 5; ++l)
        if ((mask >> l) & 1) {
          PointV g = DirectionV::perp(l).generator;
          rays.push_back(g);
          rays.push_back(-g);
        }
      const PointV ref = basis_vector(0);
      auto half = [&](const PointV& x) { return cross_sign(ref, x) > 0 || (cross_sign(ref, x) == 0 && sign(dot(ref, x)) > 0) ? 0 : 1; };
      std::sort(rays.begin(), rays.end(), [&](const PointV& x, const PointV& y) {
        int hx = half(x), hy = half(y);
        if (hx != hy) return hx < hy;
        return cross_sign(x, y) > 0;
      });
      for (std::size_t a = 0; a < rays.size(); ++a) {
        PointV d = rays[a] + rays[(a + 1) % rays.size()];
        std::uint8_t pat = 0;
        for (int l = 0; l < 5; ++l)
          if (((mask >> l) & 1) && sign(dot(basis_vector(l), d)) > 0) pat |= static_cast<std::uint8_t>(1u << l);
        all[mask].push_back(pat);
      }
    }
    return all;
  }();
  return cycles[mask & 31];
}

std::string describe(const ScanResult& r) {
  std::ostringstream os;
  if (std::holds_alternative<Nonsingular>(r)) os << "nonsingular";
  if (auto* w = std::get_if<Worm>(&r)) os << "worm along l_{" << w->spine.j << "," << w->spine.k << "}";
  if (auto* c = std::get_if<Cartwheel>(&r)) os << "cartwheel at " << to_string(c->center);
  return os.str();
}

}  // namespace penrose
