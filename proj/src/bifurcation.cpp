#include "penrose/bifurcation.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "penrose/geometry.hpp"
#include "penrose/pentagrid.hpp"

namespace penrose {

namespace {

// a u2 + b u4 + c
struct Affine {
  Qr5 a, b, c;
  Qr5 at(const UV& x) const { return a * x.u2 + b * x.u4 + c; }
};

// Parameter u_l of the normal form as an affine function of (u2, u4).  The
// integer part of u3 is absorbed into the line index.
Affine param_form(int l) {
  switch (l) {
    case 2:
      return {1, 0, 0};
    case 3:
      return {-1, -1, 0};
    case 4:
      return {0, 1, 0};
    default:
      return {0, 0, 0};
  }
}

using Poly = std::vector<UV>;

UV lerp(const UV& p, const UV& q, const Qr5& t) { return {p.u2 + t * (q.u2 - p.u2), p.u4 + t * (q.u4 - p.u4)}; }

Poly unit_square() { return {{0, 0}, {1, 0}, {1, 1}, {0, 1}}; }

// Keeps the part of a convex polygon where f >= 0.
Poly clip(const Poly& poly, const Affine& f) {
  Poly out;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const UV& p = poly[k];
    const UV& q = poly[(k + 1) % poly.size()];
    Qr5 fp = f.at(p), fq = f.at(q);
    if (fp.sign() >= 0) out.push_back(p);
    if (fp.sign() * fq.sign() < 0) out.push_back(lerp(p, q, fp / (fp - fq)));
  }
  return out;
}

bool uv_less(const UV& x, const UV& y) {
  if (!(x.u2 == y.u2)) return x.u2 < y.u2;
  return x.u4 < y.u4;
}

// Intersection of the line f = 0 with a convex polygon: its two extreme
// points, or nothing.
std::optional<std::pair<UV, UV>> chord(const Poly& poly, const Affine& f) {
  std::vector<UV> pts;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const UV& p = poly[k];
    const UV& q = poly[(k + 1) % poly.size()];
    Qr5 fp = f.at(p), fq = f.at(q);
    if (fp.sign() == 0) pts.push_back(p);
    if (fp.sign() * fq.sign() < 0) pts.push_back(lerp(p, q, fp / (fp - fq)));
  }
  if (pts.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(), uv_less);
  return std::make_pair(*lo, *hi);
}

BifLine normalized(const Affine& f) {
  Qr5 s = f.a.is_zero() ? f.b : f.a;
  return {f.a / s, f.b / s, f.c / s};
}

struct Locus {
  std::vector<BifLine> lines;
  std::vector<BifSegment> segments;
};

const Locus& locus() {
  static const Locus L = [] {
    Locus out;
    std::map<std::string, int> index;
    auto line_index = [&](const Affine& f) {
      BifLine n = normalized(f);
      std::string key = n.a.str() + "|" + n.b.str() + "|" + n.c.str();
      auto it = index.find(key);
      if (it != index.end()) return it->second;
      out.lines.push_back(n);
      return index[key] = static_cast<int>(out.lines.size()) - 1;
    };
    auto krange = [](int j) { return j < 2 ? std::pair{0, 1} : std::pair{-3, 4}; };

    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (int l = j + 1; l < 5; ++l) {
          Affine Ui = param_form(i), Uj = param_form(j), Ul = param_form(l);
          // X = X0 + u2 X2 + u4 X4 solves v_i.X = k_i - u_i, v_j.X = k_j - u_j
          PointV X2 = solve_pair(i, j, -Ui.a, -Uj.a);
          PointV X4 = solve_pair(i, j, -Ui.b, -Uj.b);
          std::string type = std::to_string(i) + std::to_string(j) + std::to_string(l);
          auto [ilo, ihi] = krange(i);
          auto [jlo, jhi] = krange(j);
          auto [llo, lhi] = krange(l);
          for (int ki = ilo; ki <= ihi; ++ki)
            for (int kj = jlo; kj <= jhi; ++kj) {
              PointV X0 = solve_pair(i, j, Qr5(ki), Qr5(kj));
              // X in the closed rhomb R_0: v_0.X, v_1.X in [0, 1]
              Poly feasible = unit_square();
              for (int t = 0; t < 2 && !feasible.empty(); ++t) {
                Affine g{dot_family(t, X2), dot_family(t, X4), dot_family(t, X0)};
                feasible = clip(feasible, g);
                feasible = clip(feasible, {-g.a, -g.b, Qr5(1) - g.c});
              }
              if (feasible.empty()) continue;
              for (int kl = llo; kl <= lhi; ++kl) {
                Affine f{dot_family(l, X2) + Ul.a, dot_family(l, X4) + Ul.b, dot_family(l, X0) - Qr5(kl)};
                if (f.a.is_zero() && f.b.is_zero()) {
                  if (f.c.is_zero()) throw std::logic_error("identically singular triple " + type);
                  continue;
                }
                auto seg = chord(feasible, f);
                if (!seg) continue;
                out.segments.push_back({line_index(f), type, seg->first, seg->second});
              }
            }
        }
    return out;
  }();
  return L;
}

}  // namespace

const std::vector<BifLine>& bifurcation_lines() { return locus().lines; }
const std::vector<BifSegment>& bifurcation_segments() { return locus().segments; }

std::vector<std::string> singular_types_at(const UV& x) {
  std::vector<std::string> out;
  const auto& lines = bifurcation_lines();
  for (const BifSegment& s : bifurcation_segments()) {
    if (lines[s.line].side(x) != 0) continue;
    auto within = [](const Qr5& v, const Qr5& a, const Qr5& b) {
      return a <= b ? (a <= v && v <= b) : (b <= v && v <= a);
    };
    if (!within(x.u2, s.p.u2, s.q.u2) || !within(x.u4, s.p.u4, s.q.u4)) continue;
    if (std::find(out.begin(), out.end(), s.type) == out.end()) out.push_back(s.type);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::vector<UV>>& arrangement_faces() {
  static const std::vector<Poly> faces = [] {
    std::vector<Poly> cur{unit_square()};
    for (const BifLine& L : bifurcation_lines()) {
      Affine f{L.a, L.b, L.c};
      Affine g{-L.a, -L.b, -L.c};
      std::vector<Poly> next;
      for (const Poly& p : cur) {
        bool pos = false, neg = false;
        for (const UV& v : p) {
          int s = L.side(v);
          pos |= s > 0;
          neg |= s < 0;
        }
        if (pos && neg) {
          next.push_back(clip(p, f));
          next.push_back(clip(p, g));
        } else {
          next.push_back(p);
        }
      }
      cur = std::move(next);
    }
    return cur;
  }();
  return faces;
}

UV interior_point(const std::vector<UV>& face) {
  UV s{0, 0};
  for (const UV& v : face) {
    s.u2 += v.u2;
    s.u4 += v.u4;
  }
  Qr5 n(static_cast<long long>(face.size()));
  return {s.u2 / n, s.u4 / n};
}

std::string side_signature(const UV& x) {
  std::string s;
  for (const BifLine& L : bifurcation_lines()) {
    int v = L.side(x);
    s.push_back(v > 0 ? '+' : v < 0 ? '-' : '0');
  }
  return s;
}

}  // namespace penrose
