// Pentagrid duality: cells of y(u) become vertices, crossings become tiles.
//
// The cell with cocycle vector m dualizes to E*(m) = (2/5) W^t (m - u).
// With this sign the dual of T^t y(u) is the dual of y(u) moved by -t, and
// every vertex lies within (2/5) gamma of the cell it comes from.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <unordered_set>
#include <variant>
#include <vector>

#include "penrose/pentagrid.hpp"

namespace penrose {

enum class TileOrigin { Dual, WormFill, CartwheelFill };

const char* origin_name(TileOrigin o);

// Rhomb spanned by v'_i and v'_j (v' = (2/5) v) at the anchor vertex, which is
// the dual of the cell below both lines of the crossing.
struct RhombTile {
  int i = 0;
  int j = 1;  // i < j
  PointV anchor;
  TileOrigin origin = TileOrigin::Dual;

  // anchor, +v'_i, +v'_i +v'_j, +v'_j
  std::array<PointV, 4> vertices() const;
  // Same vertices, counterclockwise.
  std::array<PointV, 4> ccw_vertices() const;
  RhombTile translated(const PointV& t) const;
  // Tile identity ignores how the tile was produced.
  friend bool operator==(const RhombTile& a, const RhombTile& b) {
    return a.i == b.i && a.j == b.j && a.anchor == b.anchor;
  }
};

struct RhombTileHash {
  std::size_t operator()(const RhombTile& t) const {
    return PointVHash()(t.anchor) * 31u + static_cast<std::size_t>(t.i * 5 + t.j);
  }
};

using TileSet = std::unordered_set<RhombTile, RhombTileHash>;
TileSet tile_set(const std::vector<RhombTile>& tiles);

// (2/5) v_j
PointV edge_vector(int j);

PointV dual_offset(const PentagridParams& u);  // E*(0)
PointV dual_vertex(const IVec5& m, const PentagridParams& u);

// d_n: the upper-right vertex of the v'_0 ^ v'_1 tile dual to the crossing of
// l_{0,n0} and l_{1,n1} (the lower-left corner b_n of R_n).  Requires that
// crossing to be 2-fold.
PointV corner_dual(const PentagridParams& u, const Index2& n);

enum class PolygonKind { Rhomb, NarrowHexagon, WideHexagon, Decagon };

struct PolygonDual {
  PolygonKind kind = PolygonKind::Rhomb;
  CrossingCode code;
  PointV offset;                 // E*(0) of the parameters
  std::vector<PointV> vertices;  // counterclockwise
};

PolygonDual dual_polygon(const CrossingCode& c, const PentagridParams& u);
std::vector<PolygonDual> dual_patch(const PentagridParams& u, const Window& w);
// Requires a 2-fold crossing.
RhombTile dual_rhomb(const CrossingCode& c, const PentagridParams& u);

// Tiles a multi-crossing dual by moving line family l off the crossing by
// delta_l (family l then sits at value k_l - delta_l).  Throws when delta
// leaves some triple concurrent.
std::vector<RhombTile> resolve(const PolygonDual& p, const std::array<Qr5, 5>& delta, TileOrigin origin);

// sign +1 puts the single tile of every hexagon on the side facing v_j,
// where j is the spine family.
std::vector<RhombTile> fill_worm(const std::vector<PolygonDual>& hexagons, int sign);

// Signs for the spokes v_0^perp .. v_4^perp; pattern 0 is (-,+,-,-,+), and
// each step flips all signs and moves the last one to the front.
std::array<int, 5> cartwheel_pattern(int k);
// Perturbation delta_l = v_{2l} . w realizing pattern k.
std::array<Qr5, 5> cartwheel_delta(int k);
std::vector<RhombTile> fill_cartwheel(const std::vector<PolygonDual>& polygons, int k);

struct NoFill {};
struct WormFill {
  int sign = 1;
};
struct CartwheelFill {
  int k = 0;
};
using Filling = std::variant<NoFill, WormFill, CartwheelFill>;

// T^shift y(u)* with the filling applied, i.e. the dual of y(u) moved by
// -shift.
struct PenroseTiling {
  PentagridParams params;
  Filling filling;
  PointV shift;
};

// Margin (in p, q units) by which crossings are harvested beyond the window.
inline constexpr long long kMaterializeMargin = 2;

// Tiles dual to every crossing of the shifted grid within the window grown by
// kMaterializeMargin; these cover the window.
std::vector<RhombTile> materialize(const PenroseTiling& x, const Window& w);
// Tiles dual to the crossings whose image (crossing point - shift) lies in
// the region.  Every vertex of such a tile is within (2/5) gamma of it.
std::vector<RhombTile> materialize(const PenroseTiling& x, const Region& harvest);

// Exact audit of a tile list as a tiling of the region: interior vertices
// have angle sum 360 degrees and interior edges are shared by exactly two
// tiles on opposite sides.  Returns the list of problems found (empty when
// the tiles form an edge-to-edge tiling covering the region).  Together the
// two conditions make the tiles a degree-one cover near every core vertex.
std::vector<std::string> audit_tiling(const std::vector<RhombTile>& tiles, const Region& core);

}  // namespace penrose
