// Singular locus of the normal-form grid patch g_0(u), u = (0,0,u2,{-(u2+u4)},u4),
// as a function of (u2, u4) in the unit square.
//
// A multiple crossing in the closed rhomb R_0 is two grid lines meeting at a
// point X(u2, u4) of R_0 with a third line through X.  For a fixed family
// triple and fixed line indices this is a linear condition on (u2, u4), and
// "X in R_0" cuts it down to a segment.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "penrose/qr5.hpp"

namespace penrose {

struct UV {
  Qr5 u2, u4;
  friend bool operator==(const UV&, const UV&) = default;
};

// a u2 + b u4 + c = 0, normalized so the first nonzero of (a, b) is 1.
struct BifLine {
  Qr5 a, b, c;
  int side(const UV& x) const { return (a * x.u2 + b * x.u4 + c).sign(); }
  friend bool operator==(const BifLine&, const BifLine&) = default;
};

struct BifSegment {
  int line = 0;         // index into bifurcation_lines()
  std::string type;     // incident families, e.g. "013"
  UV p, q;              // endpoints (p == q for an isolated point)
};

const std::vector<BifLine>& bifurcation_lines();
const std::vector<BifSegment>& bifurcation_segments();

// Concurrency types whose closed segment contains x (empty when g_0 is
// nonsingular there).
std::vector<std::string> singular_types_at(const UV& x);

// Faces of the arrangement of all bifurcation lines inside [0,1]^2, as
// counterclockwise convex polygons.
const std::vector<std::vector<UV>>& arrangement_faces();
UV interior_point(const std::vector<UV>& face);

// '+' / '-' / '0' per line.
std::string side_signature(const UV& x);

}  // namespace penrose
