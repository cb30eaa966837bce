// Pentagrids y(u): grid lines, crossings, the cocycle m and the rhomb
// tessellation {R_n}.
//
// Line l_{j,k} = { s : v_j . s = -u_j + k }.  Throughout, "value of family
// j at s" means v_j . s + u_j, so a point lies on l_{j,k} iff that value is k.
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "penrose/geometry.hpp"

namespace penrose {

using IVec5 = std::array<long long, 5>;
using Index2 = std::array<long long, 2>;

class ParamError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct PentagridParams {
  std::array<Qr5, 5> u;  // each in [0, 1), sum an integer

  const Qr5& operator[](int j) const { return u[j]; }
  friend bool operator==(const PentagridParams&, const PentagridParams&) = default;
};

PentagridParams make_params(const std::array<Qr5, 5>& raw);
// (0, 0, u2, {-(u2+u4)}, u4)
PentagridParams normal_form_params(const Qr5& u2, const Qr5& u4);
PentagridParams translate_params(const PentagridParams& u, const PointV& t);
IVec5 cocycle_m(const PointV& s, const PentagridParams& u);

struct GridLine {
  int j = 0;
  long long k = 0;
  friend bool operator==(const GridLine&, const GridLine&) = default;
  friend auto operator<=>(const GridLine&, const GridLine&) = default;
};

// Combinatorial record of a crossing: the incident families and the
// m-vector of the cell lying below every incident line (m_l = k_l - 1 for
// incident l).  The cells around the crossing are base + delta for the
// 0/1 patterns delta supported on the incident families.
struct CrossingCode {
  std::uint8_t mask = 0;
  IVec5 base{};

  int multiplicity() const;
  bool incident(int j) const { return (mask >> j) & 1; }
  std::vector<GridLine> lines() const;
  friend bool operator==(const CrossingCode&, const CrossingCode&) = default;
};

struct Crossing {
  PointV point;
  std::vector<GridLine> incident;
  int multiplicity = 0;
};

// The point x with v_i . x = ri and v_j . x = rj.
PointV solve_pair(int i, int j, const Qr5& ri, const Qr5& rj);

// Exact intersection point of the crossing's lines.
PointV crossing_point(const CrossingCode& c, const PentagridParams& u);
Crossing to_crossing(const CrossingCode& c, const PentagridParams& u);

// Closed convex polygon with exact vertices in counterclockwise order.
struct Region {
  std::vector<PointV> vertices;

  Region translated(const PointV& t) const;
  bool contains(const PointV& x) const;  // closed
  Region rotated72(int times) const;
};

// Rectangle in PointV coordinates: p in [p0, p1], q in [q0, q1].
struct Window {
  Qr5 p0, p1, q0, q1;

  static Window around(const PointV& center, const Qr5& half_width);
  Region region() const;
  Window translated(const PointV& t) const;
  Window shrunk(const Qr5& d) const;
  PointV center() const;
};

// Crossings (deduplicated, multi-crossings merged) whose point lies in the
// closed region.
std::vector<CrossingCode> enumerate_crossings(const PentagridParams& u, const Region& region);
std::vector<Crossing> crossings_in_window(const PentagridParams& u, const Window& w);

// Fundamental rhomb tessellation.
struct FundamentalBasis {
  PointV f0, f1;
};
const FundamentalBasis& fundamental_basis();
// A n = n0 f1 + n1 f0.
PointV apply_A(const Qr5& x, const Qr5& y);
// Lower-left corner b_n = A(n - u') of R_n.
PointV rhomb_corner(const PentagridParams& u, const Index2& n);
Region rhomb_region(const PentagridParams& u, const Index2& n);
// Crossings in the closed rhomb R_n.
std::vector<CrossingCode> crossings_in_rhomb(const PentagridParams& u, const Index2& n);

struct GridCell {
  IVec5 m;
  PointV sample;
};

struct GridPatch {
  Index2 n{};
  std::vector<GridCell> cells;
  std::vector<Crossing> crossings;
};

GridPatch grid_patch(const PentagridParams& u, const Index2& n);

// Number of distinct lines of family j meeting the interior of R_n.
int lines_through_rhomb(const std::vector<CrossingCode>& rhomb_crossings, int j);

struct Nonsingular {};
struct Worm {
  GridLine spine;
};
struct Cartwheel {
  PointV center;
};
using ScanResult = std::variant<Nonsingular, Worm, Cartwheel>;

ScanResult singularity_scan(const PentagridParams& u, const Region& region);
ScanResult singularity_scan(const std::vector<CrossingCode>& crossings, const PentagridParams& u);

// Spine family of a 3-fold crossing mask.
int spine_family(std::uint8_t mask);

// The cyclic order (counterclockwise) of the 0/1 patterns of the cells around
// a crossing with the given incident mask.
const std::vector<std::uint8_t>& cell_cycle(std::uint8_t mask);

std::string describe(const ScanResult& r);

}  // namespace penrose
