#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <bit>
#include <map>
#include <set>

#include "penrose/pentagrid.hpp"
#include "test_support.hpp"

using namespace penrose;
using penrose::testing::random_generic_params;
using penrose::testing::random_point;

namespace {

const Qr5 kA = Qr5::alpha();

// u2 + u4 = 1 with rational u2: 3-fold crossings along l_{3,0} only.
PentagridParams worm_params() { return make_params({0, 0, Qr5(Rational(1, 3)), 0, Qr5(Rational(2, 3))}); }
PentagridParams golden_params() { return make_params({0, 0, kA, 0, Qr5(1) - kA}); }

// Oracle: brute-force concurrency count at a point straight from the line
// equations.
int families_through(const PointV& x, const PentagridParams& u) {
  int n = 0;
  for (int j = 0; j < 5; ++j)
    if ((dot(basis_vector(j), x) + u[j]).is_integer()) ++n;
  return n;
}

}  // namespace

TEST_CASE("make_params") {
  CHECK_NOTHROW(make_params({0, 0, 0, 0, 0}));
  PentagridParams w = golden_params();
  CHECK(w[2] == kA);
  CHECK_THROWS_AS(make_params({0, 0, Qr5(Rational(3, 10)), 0, 0}), ParamError);
  PentagridParams r = make_params({Qr5(Rational(5, 2)), Qr5(Rational(-1, 2)), 0, 0, 0});
  CHECK(r[0] == Qr5(Rational(1, 2)));
  CHECK(r[1] == Qr5(Rational(1, 2)));
}

TEST_CASE("fundamental basis") {
  const FundamentalBasis& f = fundamental_basis();
  CHECK(dot(basis_vector(0), f.f0).is_zero());
  CHECK(dot(basis_vector(1), f.f0) == Qr5(1));
  CHECK(dot(basis_vector(0), f.f1) == Qr5(1));
  CHECK(dot(basis_vector(1), f.f1).is_zero());
  // W f0 = (0, 1, a, -a, -1), W f1 = (1, 0, -1, -a, a)
  std::array<Qr5, 5> wf0 = {0, 1, kA, -kA, -1}, wf1 = {1, 0, -1, -kA, kA};
  for (int j = 0; j < 5; ++j) {
    CHECK(dot(basis_vector(j), f.f0) == wf0[j]);
    CHECK(dot(basis_vector(j), f.f1) == wf1[j]);
  }
  XY c0 = to_cartesian(f.f0), c1 = to_cartesian(f.f1);
  CHECK(c0.x == doctest::Approx(0).epsilon(1e-12));
  CHECK(c0.y == doctest::Approx(1.05146).epsilon(1e-5));
  CHECK(c1.x == doctest::Approx(1).epsilon(1e-12));
  CHECK(c1.y == doctest::Approx(-0.32492).epsilon(1e-5));
  double n = std::hypot(c0.x + c1.x, c0.y + c1.y);
  CHECK(n == doctest::Approx(1.2361).epsilon(1e-4));
  CHECK(n < 4.0 / 3.0);
}

TEST_CASE("translate_params") {
  std::mt19937_64 rng(3);
  PentagridParams u = random_generic_params(rng);
  CHECK(translate_params(u, PointV{}) == u);
  PentagridParams z = make_params({0, 0, 0, 0, 0});
  PentagridParams t = translate_params(z, fundamental_basis().f0);
  CHECK(t == make_params({0, 0, kA, Qr5(1) - kA, 0}));
  for (int i = 0; i < 50; ++i) {
    PointV s = random_point(rng), r = random_point(rng);
    CHECK(translate_params(translate_params(u, s), r) == translate_params(u, s + r));
  }
}

TEST_CASE("cocycle") {
  PentagridParams z = make_params({0, 0, 0, 0, 0});
  PointV s{Qr5(Rational(1, 10)), 0};
  CHECK(cocycle_m(s, z) == IVec5{0, 0, -1, -1, 0});
  CHECK_THROWS_AS(cocycle_m(PointV{}, z), std::domain_error);
  std::mt19937_64 rng(5);
  PentagridParams u = random_generic_params(rng);
  // a point in the cell of the origin
  PointV tiny{Qr5(Rational(1, 1000000)), Qr5(Rational(1, 3000000))};
  CHECK(cocycle_m(tiny, u) == IVec5{0, 0, 0, 0, 0});
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    PointV a = random_point(rng), b = random_point(rng);
    try {
      IVec5 lhs = cocycle_m(a + b, u), m1 = cocycle_m(b, u), rhs = cocycle_m(a, translate_params(u, b));
      for (int j = 0; j < 5; ++j) CHECK(lhs[j] - m1[j] == rhs[j]);
      ++checked;
    } catch (const std::domain_error&) {
      // a sample landed on a grid line; skip it
    }
  }
  CHECK(checked > 990);
}

TEST_CASE("crossings: cartwheel, worm, generic") {
  Window w = Window::around(PointV{}, 4);
  auto zero = crossings_in_window(make_params({0, 0, 0, 0, 0}), w);
  bool five = false;
  for (const Crossing& c : zero)
    if (c.multiplicity == 5) {
      five = true;
      CHECK(c.point == PointV{});
    }
  CHECK(five);

  PentagridParams wp = worm_params();
  auto worm = crossings_in_window(wp, w);
  int threes = 0;
  for (const Crossing& c : worm) {
    CHECK(c.multiplicity != 5);
    if (c.multiplicity == 3) ++threes;
  }
  CHECK(threes > 0);
  ScanResult s = singularity_scan(wp, w.region());
  REQUIRE(std::holds_alternative<Worm>(s));
  CHECK(std::get<Worm>(s).spine == GridLine{3, 0});

  // On the same slope -1 line, the golden offsets also meet a 5-fold crossing.
  ScanResult gs = singularity_scan(golden_params(), Window::around(PointV{}, 4).region());
  REQUIRE(std::holds_alternative<Cartwheel>(gs));
  PointV c = std::get<Cartwheel>(gs).center;
  CHECK(families_through(c, golden_params()) == 5);

  CHECK(std::holds_alternative<Cartwheel>(singularity_scan(make_params({0, 0, 0, 0, 0}), w.region())));

  std::mt19937_64 rng(9);
  PentagridParams g = random_generic_params(rng);
  for (const Crossing& c : crossings_in_window(g, w)) {
    CHECK(c.multiplicity == 2);
    CHECK(families_through(c.point, g) == 2);
    for (const GridLine& l : c.incident) CHECK(dot(basis_vector(l.j), c.point) + g[l.j] == Qr5(l.k));
  }
  CHECK(std::holds_alternative<Nonsingular>(singularity_scan(g, w.region())));
}

TEST_CASE("crossings match a brute-force oracle") {
  std::mt19937_64 rng(21);
  for (PentagridParams u : {random_generic_params(rng), worm_params(), golden_params(), make_params({0, 0, 0, 0, 0})}) {
    Window w = Window::around(PointV{Qr5(Rational(1, 3)), Qr5(Rational(-1, 7))}, 3);
    auto fast = crossings_in_window(u, w);
    // oracle: every pair of lines from a generous index range, exact
    std::map<std::string, int> seen;
    Region reg = w.region();
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        for (long long ki = -12; ki <= 12; ++ki)
          for (long long kj = -12; kj <= 12; ++kj) {
            // solve v_i.s = ki - u_i, v_j.s = kj - u_j
            Qr5 a = gram(i, 0), b = gram(i, 1), c = gram(j, 0), d = gram(j, 1);
            Qr5 ri = Qr5(ki) - u[i], rj = Qr5(kj) - u[j];
            Qr5 det = a * d - b * c;
            PointV s{(ri * d - b * rj) / det, (a * rj - c * ri) / det};
            if (!reg.contains(s)) continue;
            seen[to_string(s)] = families_through(s, u);
          }
    CHECK(fast.size() == seen.size());
    for (const Crossing& c : fast) CHECK(c.multiplicity == families_through(c.point, u));
  }
}

TEST_CASE("generic crossing density is stable across windows") {
  std::mt19937_64 rng(13);
  PentagridParams u = random_generic_params(rng);
  Qr5 h = 30;
  std::map<std::pair<int, int>, std::vector<double>> per_pair;
  for (int c = 0; c < 3; ++c) {
    Window w = Window::around(PointV{Qr5(100 * c), Qr5(-50 * c)}, h);
    std::map<std::pair<int, int>, int> count;
    for (const CrossingCode& x : enumerate_crossings(u, w.region())) {
      REQUIRE(x.multiplicity() == 2);
      auto l = x.lines();
      ++count[{l[0].j, l[1].j}];
    }
    double area = 60.0 * 60.0 * std::sin(2 * M_PI / 5);
    for (auto& [k, n] : count) per_pair[k].push_back(n / area);
  }
  CHECK(per_pair.size() == 10);
  for (auto& [k, d] : per_pair) {
    REQUIRE(d.size() == 3);
    double expect = std::fabs(std::sin(2 * M_PI * (k.second - k.first) / 5));
    for (double x : d) {
      CHECK(std::fabs(x - d[0]) < 0.1 * d[0]);
      CHECK(std::fabs(x - expect) < 0.05 * expect);
    }
  }
}

TEST_CASE("grid patches") {
  PentagridParams z = make_params({0, 0, Qr5(Rational(1, 3)), Qr5(Rational(1, 3)), Qr5(Rational(1, 3))});
  Region r = rhomb_region(z, {0, 0});
  const FundamentalBasis& f = fundamental_basis();
  CHECK(r.vertices[0] == PointV{});
  CHECK(r.vertices[1] == f.f1);
  CHECK(r.vertices[2] == f.f0 + f.f1);
  CHECK(r.vertices[3] == f.f0);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    PentagridParams u = random_generic_params(rng);
    Index2 n{trial % 7 - 3, trial % 5 - 2};
    auto codes = crossings_in_rhomb(u, n);
    // the rhomb enumeration agrees with the polygon enumeration
    auto poly = enumerate_crossings(u, rhomb_region(u, n));
    CHECK(codes.size() == poly.size());
    int c2 = lines_through_rhomb(codes, 2), c4 = lines_through_rhomb(codes, 4);
    CHECK((c2 == 1 || c2 == 2));
    CHECK((c4 == 1 || c4 == 2));
    GridPatch g = grid_patch(u, n);
    CHECK(g.crossings.size() == codes.size());
    std::set<IVec5> ms;
    for (const GridCell& c : g.cells) {
      CHECK(ms.insert(c.m).second);
      CHECK(cocycle_m(c.sample, u) == c.m);
      CHECK(r.contains(c.sample - rhomb_corner(u, n) + r.vertices[0]));
    }
    // lattice equivariance: translating u by A k shifts n by k
    Index2 k{trial % 3 - 1, 2 - trial % 4};
    PointV ak = apply_A(Qr5(k[0]), Qr5(k[1]));
    GridPatch moved = grid_patch(translate_params(u, ak), n);
    GridPatch orig = grid_patch(u, {n[0] + k[0], n[1] + k[1]});
    REQUIRE(moved.crossings.size() == orig.crossings.size());
    std::set<std::pair<std::string, std::string>> a, b;
    for (const Crossing& c : moved.crossings) a.insert({c.point.p.str(), c.point.q.str()});
    for (const Crossing& c : orig.crossings) {
      PointV p = c.point - ak;
      b.insert({p.p.str(), p.q.str()});
    }
    CHECK(a == b);
  }
}

TEST_CASE("cell cycles") {
  for (unsigned mask : {3u, 5u, 7u, 13u, 31u}) {
    const auto& cyc = cell_cycle(static_cast<std::uint8_t>(mask));
    int n = std::popcount(mask);
    CHECK(cyc.size() == static_cast<std::size_t>(2 * n));
    std::set<std::uint8_t> distinct(cyc.begin(), cyc.end());
    CHECK(distinct.size() == cyc.size());
    // adjacent cells differ by crossing exactly one line
    for (std::size_t a = 0; a < cyc.size(); ++a)
      CHECK(std::popcount(static_cast<unsigned>(cyc[a] ^ cyc[(a + 1) % cyc.size()])) == 1);
  }
  CHECK(spine_family(0b00111) == 1);
  CHECK(spine_family(0b01101) == 0);
  CHECK(spine_family(0b11010) == 1);
  CHECK(spine_family(0b11001) == 4);
}
