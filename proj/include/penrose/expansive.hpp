// Directional expansiveness at finite scale: strips x[V^r] truncated to
// length L, reconstruction of the tiling from a strip through its Wang
// patches and Sturmian words, worm-flip counterexamples for the directions
// perpendicular to the v_j, and the exact direction classifier.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "penrose/duality.hpp"
#include "penrose/sturmian.hpp"
#include "penrose/wang.hpp"

namespace penrose {

// Tiles of a tiling wholly inside {t g/|g| + w : |t| <= L, |w| <= r, w perp g}.
struct Strip {
  DirectionV direction;
  Qr5 r, L;
  std::vector<RhombTile> tiles;
};

// Exact membership of a point in the truncated strip.
bool in_strip(const PointV& x, const DirectionV& d, const Qr5& r, const Qr5& L);
// Rational rectangle containing the strip grown by `margin` on every side.
Region strip_hull(const DirectionV& d, const Qr5& r, const Qr5& L, double margin);
Strip strip_extract(const PenroseTiling& x, const DirectionV& d, const Qr5& r, const Qr5& L);
bool same_tiles(const std::vector<RhombTile>& a, const std::vector<RhombTile>& b);

class ReconstructionError : public std::runtime_error {
 public:
  enum Kind { DegenerateFrame, CoverageGap, Inconsistent };
  ReconstructionError(Kind k, const std::string& what) : std::runtime_error(what), kind(k) {}
  Kind kind;
};

// Parameters and placement read off a strip.  Everything lives in frame k:
// the strip tiles turned by -72k degrees, which relabels family l as l - k.
// If the turned tiling is y(u)* then u2 and u4 below enclose the normal form
// of u at the anchor patch n_a, and the turned tiling is y(u0)* moved by
// t0 = b_{n_a}, the lower-left corner of the fundamental rhomb holding the
// origin.
struct Reconstruction {
  int frame = 0;
  Arc u2, u4;
  int carry = 1;      // u3 = carry - u2 - u4, from the side of u2 + u4 = 1 the anchor cell is on
  int anchor_id = -1;
  PointV anchor;      // d_{n_a}
  // Covered index ranges relative to the anchor, n0 (rows) and n1 (columns).
  long long row_lo = 0, row_hi = 0, col_lo = 0, col_hi = 0;
  int complete_patches = 0;
  int partial_patches = 0;
  std::size_t tiles_used = 0;
  // Box enclosing t0 over the parameter box, in Cartesian coordinates of the
  // frame, and the largest norm t0 takes on it.
  double t0_x0 = 0, t0_x1 = 0, t0_y0 = 0, t0_y1 = 0, t0_norm_max = 0;

  // t0 = anchor + (2/5)(u2 v2 + u3 v3 + u4 v4): exact once u2, u4 are.
  PointV t0_at(const Qr5& u2, const Qr5& u4) const;
  std::string summary() const;
};

// Throws ReconstructionError: DegenerateFrame when the direction is
// perpendicular to v0 or v1, CoverageGap when the complete patches leave a
// row or column out (or there are none).
Reconstruction reconstruct_from_strip(const Strip& s);

// Frame bookkeeping: u^(k)_l = u_{l+k}, and points turn by -72k degrees.
PentagridParams params_in_frame(const PentagridParams& u, int k);
PointV point_in_frame(const PointV& x, int k);

// Compares a reconstruction against the tiling it came from (which must be
// nonsingular): finds the global index of the anchor patch and checks that
// the arcs hold the true normal form and that t0 is exactly right.
struct TruthCheck {
  bool found = false;
  bool u2_inside = false, u4_inside = false, carry_ok = false, shift_exact = false, norm_below = false;
  Index2 n{};
  Qr5 u2, u4;
  PointV t0;
  bool ok() const { return found && u2_inside && u4_inside && carry_ok && shift_exact && norm_below; }
  std::string summary() const;
};
TruthCheck check_reconstruction(const PenroseTiling& x, const Reconstruction& r);

// A hexagon made of three tiles around a degree-3 vertex.  `sign` is +1 when
// the tile without a v_spine edge sits on the +v_spine side of the center.
struct FilledHexagon {
  std::array<int, 3> families{};
  int spine = 0;
  int sign = 0;
  PointV center;
  std::vector<RhombTile> tiles;
};
// Worm read from a strip of a singular tiling.  Each complete patch confines
// the normal form at its rhomb to the closed cell of its id; moved back to
// the anchor and intersected, these give a small exact region of (u2, u4).
// A hexagon belongs to a worm candidate when its three grid lines are
// concurrent for some parameter in that region; hexagons with the same
// concurrency condition form one candidate.  A finite strip cannot tell a
// worm from a hexagon row whose lines miss concurrency by less than the
// region's size, so every candidate is reported with its filling.
struct WormCandidate {
  int spine = -1;  // family, in the strip's own labelling
  int sign = 0;    // 0 when the hexagons disagree
  std::vector<FilledHexagon> hexagons;
};
struct WormReading {
  std::vector<std::vector<UV>> region;  // convex pieces
  std::vector<WormCandidate> candidates;
  int hexagons_seen = 0;
  bool found() const { return !candidates.empty(); }
  std::string summary() const;
};
std::vector<FilledHexagon> filled_hexagons(const std::vector<RhombTile>& tiles);
WormReading read_worm(const Strip& s, const Reconstruction& r);
// Diameter of the regular decagon with edge 2/5, the least usable strip
// half-width for singular tilings.
Qr5 decagon_diameter();

struct Expansive {};
struct NonExpansive {
  int j = 0;
};
using DirectionClass = std::variant<Expansive, NonExpansive>;
DirectionClass classify_direction(const DirectionV& d);
// Lattice-plane slope (nullopt = vertical) mapped into the tiling plane.
DirectionClass classify_lattice_slope(const std::optional<Qr5>& slope);
std::string class_string(const DirectionClass& c);

struct WormAudit {
  bool strips_equal = false;
  bool tilings_differ = false;
  std::size_t strip_tiles = 0;
  std::size_t differing_tiles = 0;
  double max_spine_distance = 0;  // over vertices of differing tiles
  double spine_bound = 0;         // 2/3 + longest tile diagonal
  double spine_offset = 0;        // distance of the spine from the line V
  bool ok() const {
    return strips_equal && tilings_differ && max_spine_distance <= spine_bound;
  }
  std::string summary() const;
};
struct WormCounterexample {
  int j = 0;
  GridLine spine;
  PenroseTiling plus, minus;
  WormAudit audit;
};
// Worm with spine parallel to v_j-perp at distance r + 5 from the origin.
// The audit compares the two strips (half-width r, half-length equal to the
// window radius) and the two tilings over the window.
WormCounterexample worm_flip_counterexample(int j, const Qr5& r, long long window_radius = 60);

}  // namespace penrose
