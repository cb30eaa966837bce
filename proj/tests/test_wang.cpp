#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "penrose/wang.hpp"
#include "golden.hpp"
#include "test_support.hpp"

using namespace penrose;
using namespace penrose::testing;

namespace {

const Qr5 kA = Qr5::alpha();

Rational tiny() { return Rational(1, 1000000000000LL); }

int id_or_boundary(const Qr5& u2, const Qr5& u4) {
  Classification c = classify_bifurcation(u2, u4);
  if (const auto* id = std::get_if<CellId>(&c)) return id->id;
  return -1;
}

// Points in (0, 1) along u2 (or u4) with the other coordinate at `fixed`
// where the cell id changes, located to 1e-13 by bisection.
std::vector<double> id_changes(bool along_u2, const Rational& fixed) {
  auto at = [&](const Rational& s) {
    return along_u2 ? id_or_boundary(Qr5(s), Qr5(fixed)) : id_or_boundary(Qr5(fixed), Qr5(s));
  };
  const int N = 400;
  std::vector<double> out;
  Rational prev_s(1, 2 * N);
  int prev = at(prev_s);
  for (int k = 1; k < N; ++k) {
    Rational s = Rational(2 * k + 1, 2 * N);
    int cur = at(s);
    if (cur != prev) {
      Rational lo = prev_s, hi = s;
      int idlo = prev;
      while ((hi - lo).to_double() > 1e-13) {
        Rational mid = (lo + hi) * Rational(1, 2);
        int m = at(mid);
        if (m == idlo) lo = mid;
        else hi = mid;
      }
      out.push_back(((lo + hi) * Rational(1, 2)).to_double());
    }
    prev = cur;
    prev_s = s;
  }
  return out;
}

}  // namespace

TEST_CASE("the arrangement faces yield exactly 24 Wang patches") {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CanonPatch> c = enumerate_canon_24();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(secs < 10.0);
  REQUIRE(c.size() == 24);
  std::set<PatchKey> keys;
  std::size_t faces = 0;
  for (int a = 0; a < kWangCount; ++a) {
    CHECK(c[a].id == a);
    keys.insert(c[a].tiles);
    faces += c[a].faces.size();
    CHECK(std::get<CellId>(classify_bifurcation(c[a].sample.u2, c[a].sample.u4)).id == a);
  }
  CHECK(keys.size() == 24);
  CHECK(faces == arrangement_faces().size());
}

TEST_CASE("arrangement faces cover the unit square") {
  Qr5 total;
  for (const auto& f : arrangement_faces()) {
    Qr5 a;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const UV &p = f[k], &q = f[(k + 1) % f.size()];
      a += p.u2 * q.u4 - q.u2 * p.u4;
    }
    CHECK(a.sign() > 0);
    total += a;
  }
  CHECK(total == Qr5(2));
}

TEST_CASE("slope -1 bifurcation lines") {
  std::set<std::string> cs;
  for (const BifLine& L : bifurcation_lines())
    if (L.a == Qr5(1) && L.b == Qr5(1)) cs.insert((-L.c).str());
  // 0, 1, 2 and eta1, eta3, 1 + eta1, 1 + eta3
  std::set<std::string> want;
  for (Qr5 c : {Qr5(0), Qr5(1), Qr5(2), Qr5(2) - Qr5::golden(), Qr5(4) - Qr5(2) * Qr5::golden(),
                Qr5(3) - Qr5::golden(), Qr5(5) - Qr5(2) * Qr5::golden()})
    want.insert(c.str());
  CHECK(cs == want);
}

TEST_CASE("geometric and closed-form classifiers agree") {
  std::mt19937_64 rng(11);
  int n = 0;
  for (int t = 0; t < 1000; ++t) {
    auto [u2, u4] = random_generic_u2u4(rng, 100000);
    if (t % 3 == 0) u2 = (u2 * kA).frac();  // irrational points too
    Classification g = classify_bifurcation(u2, u4);
    Classification c = classify_closed_form(u2, u4);
    CHECK(classification_string(g) == classification_string(c));
    n += std::holds_alternative<CellId>(g);
  }
  CHECK(n > 990);
}

TEST_CASE("classifiers on the boundary") {
  Qr5 a = kA;
  for (auto [u2, u4] : std::vector<std::pair<Qr5, Qr5>>{
           {a, Qr5(1) - a}, {Qr5(0), Qr5(Rational(1, 3))}, {Qr5(1) - a, Qr5(Rational(1, 5))},
           {Qr5(Rational(1, 7)), Qr5(0)}, {Qr5(Rational(1, 4)), Qr5(Rational(3, 4))}}) {
    CAPTURE(u2.str());
    CAPTURE(u4.str());
    Classification g = classify_bifurcation(u2, u4);
    REQUIRE(std::holds_alternative<Boundary>(g));
    CHECK(!std::get<Boundary>(g).witnesses.empty());
    CHECK(std::holds_alternative<Boundary>(classify_closed_form(u2, u4)));
  }
  CHECK_THROWS_AS(classify_bifurcation(Qr5(1), Qr5(0)), ParamError);
  CHECK_THROWS_AS(classify_closed_form(Qr5(-1), Qr5(0)), ParamError);
}

TEST_CASE("singular segments and geometric boundary agree on a fine grid") {
  // Boundary points of the geometric classifier lie on the derived segments.
  for (int x = 0; x < 60; ++x)
    for (int y = 0; y < 60; ++y) {
      Qr5 u2(Rational(x, 60)), u4(Rational(y, 60));
      bool g = std::holds_alternative<Boundary>(classify_bifurcation(u2, u4));
      bool c = !singular_types_at({u2, u4}).empty();
      CHECK(g == c);
    }
}

TEST_CASE("cell changes along both axes sit at 0, eta1, eta2, eta3, 1") {
  const double eta[3] = {2 - 1.6180339887498949, 1.6180339887498949 - 1, 4 - 2 * 1.6180339887498949};
  for (bool along_u2 : {true, false})
    for (const Rational& fixed : {tiny(), Rational(1) - tiny()}) {
      std::vector<double> ch = id_changes(along_u2, fixed);
      REQUIRE(ch.size() == 3);
      for (int k = 0; k < 3; ++k) CHECK(std::abs(ch[k] - eta[k]) < 1e-9);
    }
  // the ends: u = 0 is singular, and crossing it changes the cell
  for (Qr5 f : {Qr5(tiny()), Qr5(Rational(1) - tiny())}) {
    CHECK(id_or_boundary(Qr5(0), f) == -1);
    CHECK(id_or_boundary(f, Qr5(0)) == -1);
    CHECK(id_or_boundary(Qr5(tiny()), f) != id_or_boundary(Qr5(Rational(1) - tiny()), f));
    CHECK(id_or_boundary(f, Qr5(tiny())) != id_or_boundary(f, Qr5(Rational(1) - tiny())));
  }
}

TEST_CASE("edge codes reproduce the printed code words and colors") {
  for (int a = 0; a < kWangCount; ++a) {
    CAPTURE(a);
    const WangTile& w = edge_codes_and_colors(a);
    for (int s = 0; s < 4; ++s) {
      CHECK(w.colors[s] == kPrinted[a].colors[s]);
      const auto& dict = s < 2 ? kBottomTopWords : kLeftRightWords;
      CHECK(w.codes[s] == dict[kPrinted[a].colors[s]]);
    }
  }
}

TEST_CASE("printed rows with misplaced bars resolve to the geometric reading") {
  // row 1 prints its bottom/top words with bars on the wrong letters, rows 13
  // and 18 print right words that exist nowhere else in the table
  CHECK(edge_codes_and_colors(1).codes[kBottom] == EdgeWord{-2, 4});
  CHECK(edge_codes_and_colors(1).codes[kTop] == EdgeWord{-2, -3, 4});
  CHECK(edge_codes_and_colors(13).codes[kRight] == EdgeWord{2, -3, -4});
  CHECK(edge_codes_and_colors(18).codes[kRight] == EdgeWord{2, -4});
}

TEST_CASE("alphabets of the four sides") {
  for (const WangTile& w : wang_tiles()) {
    for (int s = 0; s < 2; ++s)
      for (int x : w.codes[s]) CHECK((x == -2 || x == -3 || x == 4));
    for (int s = 2; s < 4; ++s)
      for (int x : w.codes[s]) CHECK((x == 2 || x == -3 || x == -4));
  }
}

TEST_CASE("symbols: trails agree with grid line counts and the anchor patch") {
  for (const CanonPatch& cp : canon_24()) {
    PentagridParams u = normal_form_params(cp.sample.u2, cp.sample.u4);
    CHECK(wang_symbol(cp.tiles) == grid_symbol(crossings_in_rhomb(u, {0, 0})));
  }
  CHECK(wang_symbol(20) == Symbol{0, 1});
  // quadrants
  auto sym = [](Rational a, Rational b) {
    return wang_symbol(std::get<CellId>(classify_bifurcation(Qr5(a), Qr5(b))).id);
  };
  CHECK(sym(Rational(1, 10), Rational(1, 10)) == Symbol{0, 0});
  // (1/10, 9/10) and (9/10, 1/10) lie on the singular line u2 + u4 = 1;
  // the quadrant symbol holds on both sides of it
  CHECK(id_or_boundary(Qr5(Rational(1, 10)), Qr5(Rational(9, 10))) == -1);
  CHECK(id_or_boundary(Qr5(Rational(9, 10)), Qr5(Rational(1, 10))) == -1);
  for (Rational d : {Rational(1, 1000), Rational(-1, 1000)}) {
    CHECK(sym(Rational(1, 10), Rational(9, 10) + d) == Symbol{1, 0});
    CHECK(sym(Rational(9, 10) + d, Rational(1, 10)) == Symbol{0, 1});
  }
  CHECK(sym(Rational(9, 10), Rational(9, 10)) == Symbol{1, 1});
}

TEST_CASE("symbols along a field follow the rotation words") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 3; ++t) {
    PentagridParams u = random_generic_params(rng);
    PentagridParams v = translate_params(u, rhomb_corner(u, {0, 0}));
    for (long long n0 = -4; n0 <= 4; ++n0)
      for (long long n1 = -4; n1 <= 4; ++n1) {
        auto in_upper = [](const Qr5& x) { return x.frac() >= Qr5(1) - kA; };
        Symbol s = wang_symbol(patch_key(u, {n0, n1}));
        CHECK(s.z == (in_upper(v[4] + Qr5(n0) * kA) ? 1 : 0));
        CHECK(s.zp == (in_upper(v[2] + Qr5(n1) * kA) ? 1 : 0));
      }
  }
}

TEST_CASE("SFT adjacency and Wang fields") {
  const SftAdjacency& a = sft_adjacency();
  CHECK(a.above[9][0]);  // 0 may sit above 9
  std::mt19937_64 rng(21);
  for (int t = 0; t < 3; ++t) {
    PentagridParams u = random_generic_params(rng);
    WangField f = wang_field(u, {-20, -20}, 40, 40);
    CHECK(check_field(f).empty());
    std::set<int> ids(f.ids.begin(), f.ids.end());
    CHECK(ids.size() == 24);
  }
}

TEST_CASE("field entries equal the classifier on translated parameters") {
  std::mt19937_64 rng(8);
  PentagridParams u = random_generic_params(rng);
  WangField f = wang_field(u, {-3, -3}, 7, 7);
  for (long long n0 = -3; n0 <= 3; ++n0)
    for (long long n1 = -3; n1 <= 3; ++n1) {
      PentagridParams v = translate_params(u, rhomb_corner(u, {n0, n1}));
      REQUIRE(v[0].is_zero());
      REQUIRE(v[1].is_zero());
      CHECK(std::get<CellId>(classify_bifurcation(v[2], v[4])).id == f.at(n0, n1));
    }
}

TEST_CASE("patch tiles are the dual tiles of the rhomb crossings") {
  std::mt19937_64 rng(3);
  PentagridParams u = random_generic_params(rng);
  for (long long n0 = -2; n0 <= 2; ++n0) {
    Index2 n{n0, 1};
    std::vector<CrossingCode> codes = crossings_in_rhomb(u, n);
    TileSet want;
    for (const CrossingCode& c : codes) want.insert(dual_rhomb(c, u));
    TileSet got = tile_set(patch_tiles(patch_key(codes, n), corner_dual(u, n)));
    CHECK(got == want);
  }
}

TEST_CASE("tetragons") {
  CHECK(tetragon_type_count() == 11);
  for (int a = 0; a < kWangCount; ++a) {
    CAPTURE(a);
    const Tetragon& g = tetragon_edges(a);
    CHECK(g.type == kPrinted[a].type);
    for (int s = 0; s < 4; ++s) {
      CHECK(g.vector_index[s] == kPrinted[a].vectors[s]);
      XY want = s < 2 ? kBottomTopVectors[g.vector_index[s]] : kLeftRightVectors[g.vector_index[s]];
      XY got = to_cartesian(g.sides[s]);
      CHECK(std::abs(got.x - want.x) < 1e-3);
      CHECK(std::abs(got.y - want.y) < 1e-3);
    }
  }
  // sides are differences of consecutive d_n
  std::mt19937_64 rng(17);
  PentagridParams u = random_generic_params(rng);
  for (long long n0 = -3; n0 <= 3; ++n0)
    for (long long n1 = -3; n1 <= 3; ++n1) {
      const Tetragon& g = tetragon_edges(patch_id(patch_key(u, {n0, n1})));
      PointV d00 = corner_dual(u, {n0, n1}), d10 = corner_dual(u, {n0 + 1, n1});
      PointV d01 = corner_dual(u, {n0, n1 + 1}), d11 = corner_dual(u, {n0 + 1, n1 + 1});
      CHECK(g.sides[kBottom] == d10 - d00);
      CHECK(g.sides[kTop] == d11 - d01);
      CHECK(g.sides[kLeft] == d01 - d00);
      CHECK(g.sides[kRight] == d11 - d10);
    }
}

TEST_CASE("lattice and tiling directions") {
  std::vector<std::optional<Qr5>> slopes;
  for (int j = 0; j < 5; ++j) slopes.push_back(lattice_slope(to_lattice(DirectionV::perp(j))));
  CHECK(!slopes[0]);
  CHECK(*slopes[1] == Qr5(0));
  CHECK(*slopes[2] == Qr5::golden());
  CHECK(*slopes[3] == Qr5(-1));
  CHECK(*slopes[4] == kA);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    PointV g = random_point(rng);
    if (g.p.is_zero() && g.q.is_zero()) continue;
    DirectionV d(g);
    CHECK(to_tiling(to_lattice(d)).generator == g);
  }
}

TEST_CASE("bent lines stay within 2/3 of the grid lines") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    PentagridParams u = random_generic_params(rng);
    for (long long n1 = -3; n1 <= 3; ++n1) CHECK(bent_line_deviation(u, n1, -40, 40) < 2.0 / 3.0);
  }
}
