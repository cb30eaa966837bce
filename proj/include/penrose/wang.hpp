// Wang patches: duals of the grid patches g_n(u) cut out by the fundamental
// rhombs R_n, their 24 isomorphism classes, edge codes, colors, the induced
// subshift, the tetragon tiles, and lattice <-> tiling directions.
//
// Patches are compared after translating d_n to the origin.  Tile anchors are
// then (2/5) times a lattice vector, so a canonical patch is a sorted list of
// (i, j, lattice vector) records with integer coordinates.
#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "penrose/bifurcation.hpp"
#include "penrose/duality.hpp"
#include "penrose/pentagrid.hpp"

namespace penrose {

inline constexpr int kWangCount = 24;

struct PatchTile {
  int i = 0, j = 1;
  ZVec rel;  // anchor - d_n, in units of 2/5
  friend bool operator==(const PatchTile&, const PatchTile&) = default;
  friend bool operator<(const PatchTile& x, const PatchTile& y) {
    if (x.i != y.i) return x.i < y.i;
    if (x.j != y.j) return x.j < y.j;
    return x.rel < y.rel;
  }
};
using PatchKey = std::vector<PatchTile>;

class SingularPatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Canonical dual of the crossings of the closed rhomb R_n.  Throws
// SingularPatch when a crossing there is not 2-fold.
PatchKey patch_key(const std::vector<CrossingCode>& rhomb_crossings, const Index2& n);
PatchKey patch_key(const PentagridParams& u, const Index2& n);

// Real tiles of a canonical patch placed with d_n at the given point.
std::vector<RhombTile> patch_tiles(const PatchKey& key, const PointV& dn);

// Side order used everywhere: bottom, top, left, right.
enum Side { kBottom = 0, kTop = 1, kLeft = 2, kRight = 3 };
// +j records v'_j, -j records -v'_j.
using EdgeWord = std::vector<int>;
using EdgeCodes = std::array<EdgeWord, 4>;
std::string word_string(const EdgeWord& w);  // e.g. "4 -3 -2"

// Follows the boundary trails of the patch from corner tile to corner tile
// and records the non-corner tiles' displacement vectors.  Bottom and top are
// read left to right, left and right upward.
EdgeCodes read_edge_codes(const PatchKey& key);

// z (+) z': z from the v_4-perpendicular trails, z' from the v_2 ones
// (number of trail segments minus one).
struct Symbol {
  int z = 0, zp = 0;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};
std::string symbol_string(const Symbol& s);
Symbol wang_symbol(const PatchKey& key);
Symbol wang_symbol(int id);
// The same symbol counted on the grid side (4- and 2-lines through R_n).
Symbol grid_symbol(const std::vector<CrossingCode>& rhomb_crossings);

struct CanonPatch {
  int id = -1;
  PatchKey tiles;
  UV sample;               // an interior point of the cell
  std::vector<int> faces;  // arrangement faces making up the cell
  EdgeCodes codes;
};

// Samples every arrangement face, groups equal patches and numbers them by
// their edge codes.  Always recomputes.
std::vector<CanonPatch> enumerate_canon_24();
// Cached, indexed by id.
const std::vector<CanonPatch>& canon_24();
// Id of a canonical patch; throws if it is not one of the 24.
int patch_id(const PatchKey& key);

struct CellId {
  int id = -1;
};
struct Boundary {
  std::vector<std::string> types;        // concurrency types, e.g. "013"
  std::vector<CrossingCode> witnesses;   // geometric classifier only
};
using Classification = std::variant<CellId, Boundary>;

// Builds g_0 for u = (0,0,u2,{-(u2+u4)},u4), dualizes and matches.
// Requires u2, u4 in [0, 1).
Classification classify_bifurcation(const Qr5& u2, const Qr5& u4);
// Position relative to the bifurcation lines, looked up in a frozen table of
// arrangement faces; singular segments give Boundary.
Classification classify_closed_form(const Qr5& u2, const Qr5& u4);
std::string classification_string(const Classification& c);

// Colors: per side pair, words numbered by first appearance in id order.
struct WangTile {
  int id = 0;
  EdgeCodes codes;
  std::array<int, 4> colors{};  // c_b, c_t, c_l, c_r
};
const std::vector<WangTile>& wang_tiles();
const WangTile& edge_codes_and_colors(int id);

// right[a][b]: b may sit right of a (c_r(a) = c_l(b)).
// above[a][b]: b may sit above a (c_t(a) = c_b(b)).
struct SftAdjacency {
  std::array<std::array<bool, kWangCount>, kWangCount> right{}, above{};
};
const SftAdjacency& sft_adjacency();

// ids[(n1 - lo1) * width + (n0 - lo0)]; n0 grows rightward, n1 upward.
struct WangField {
  Index2 lo{};
  int width = 0, height = 0;
  std::vector<int> ids;
  int at(long long n0, long long n1) const { return ids[(n1 - lo[1]) * width + (n0 - lo[0])]; }
};
WangField wang_field(const PentagridParams& u, const Index2& lo, int width, int height);
// Adjacency violations, as human-readable strings.
std::vector<std::string> check_field(const WangField& f);

// Tetragon tile: sides b_b = d_{n+e0} - d_n, b_t = d_{n+e0+e1} - d_{n+e1},
// b_l = d_{n+e1} - d_n, b_r = d_{n+e0+e1} - d_{n+e0}.
struct Tetragon {
  int id = 0;
  int type = 0;
  std::array<PointV, 4> sides;
  std::array<int, 4> vector_index{};  // per side pair, numbered by color
};
const std::vector<Tetragon>& tetragons();
const Tetragon& tetragon_edges(int id);
int tetragon_type_count();
// Side vector from an edge word: v'_0 (bottom/top) or v'_1 (left/right) plus
// the word's vectors.
PointV word_vector(Side s, const EdgeWord& w);

// Directions in the lattice plane Z^2 versus the tiling plane, via
// A(x, y) = x f1 + y f0.
struct LatticeVec {
  Qr5 x, y;
};
LatticeVec to_lattice(const DirectionV& d);
DirectionV to_tiling(const LatticeVec& g);
// nullopt for a vertical direction.
std::optional<Qr5> lattice_slope(const LatticeVec& g);

// Largest |b_n - d_n| for n = (n0, n1), n0 in [lo, hi]: an upper bound on
// the uniform distance between the bent line through the d_n and the grid
// line l_{1,n1} through the b_n.
double bent_line_deviation(const PentagridParams& u, long long n1, long long lo, long long hi);

}  // namespace penrose
