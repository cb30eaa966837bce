#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "penrose/approx.hpp"
#include "penrose/geometry.hpp"
#include "penrose/qr5.hpp"

using namespace penrose;

namespace {

// Independent oracle: 512-bit GMP floats.
mpf_class high(const Qr5& x) {
  mpf_class s5(5, 512);
  s5 = sqrt(s5);
  mpf_class a(x.a().to_mpq(), 512), b(x.b().to_mpq(), 512);
  return a + b * s5;
}

Qr5 random_qr5(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> num(-2000000, 2000000), den(1, 5000);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

}  // namespace

TEST_CASE("rational arithmetic is exact across the inline/GMP boundary") {
  Rational big(std::numeric_limits<long long>::max());
  Rational r = big * big;
  CHECK(!r.is_small());
  CHECK(r / big == big);
  CHECK((r / big).is_small());
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).ceil() == 4);
  CHECK(Rational::parse("-12/8") == Rational(-3, 2));
  CHECK_THROWS(Rational::parse("1.5"));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("field identities") {
  Qr5 g = Qr5::golden(), a = Qr5::alpha();
  CHECK(g * a == Qr5(1));
  CHECK(g - Qr5(1) == a);
  CHECK((Qr5(2) - g) + (g - Qr5(1)) == Qr5(1));
  CHECK(a * a + a == Qr5(1));
  CHECK_THROWS_AS(Qr5(1) / Qr5(0), std::domain_error);
  Qr5 x{Rational(3, 7), Rational(-2, 5)};
  CHECK(x * x.inverse() == Qr5(1));
}

TEST_CASE("sign and floor examples") {
  Qr5 g = Qr5::golden();
  CHECK(g.sign() == 1);
  CHECK(g.floor() == 1);
  CHECK((Qr5(4) - Qr5(2) * g).sign() == 1);
  CHECK((Qr5(4) - Qr5(2) * g).floor() == 0);
  CHECK((-Qr5::alpha()).sign() == -1);
  CHECK((-Qr5::alpha()).floor() == -1);
  CHECK(Qr5(0).sign() == 0);
}

TEST_CASE("sign and floor agree with a high-precision oracle") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 10000; ++i) {
    Qr5 x = random_qr5(rng);
    mpf_class h = high(x);
    CHECK(x.sign() == sgn(h));
    mpf_class f = floor(h);
    CHECK(x.floor() == f.get_si());
  }
}

TEST_CASE("floor near integers uses the exact path") {
  // p_k - q_k sqrt5 from convergents of sqrt5 are tiny and alternate in sign
  mpz_class p0 = 2, q0 = 1, p1 = 9, q1 = 4;
  for (int k = 0; k < 30; ++k) {
    Qr5 x{Rational(mpq_class(p1)), Rational(mpq_class(-q1))};
    for (long long n : {-3LL, 0LL, 5LL}) {
      Qr5 y = x + Qr5(n);
      mpf_class h = high(y);
      CHECK(y.floor() == mpf_class(floor(h)).get_si());
      CHECK(y.sign() == sgn(h));
    }
    mpz_class p2 = 4 * p1 + p0, q2 = 4 * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
}

TEST_CASE("literal grammar") {
  Qr5 a = Qr5::alpha(), g = Qr5::golden();
  CHECK(parse_qr5("1-a") == Qr5(1) - a);
  CHECK(parse_qr5("2g-2") == Qr5(2) * g - Qr5(2));
  CHECK(parse_qr5("1/2 + 1/2*s5") == g);
  CHECK(parse_qr5("-3/10") == Qr5(Rational(-3, 10)));
  CHECK(parse_qr5(Qr5(Rational(5, 3), Rational(-7, 2)).str()) == Qr5(Rational(5, 3), Rational(-7, 2)));
  CHECK_THROWS(parse_qr5("0.3"));
  CHECK_THROWS(parse_qr5("1+"));
  CHECK_THROWS(parse_qr5("x"));
  CHECK_THROWS(parse_qr5(""));
}

TEST_CASE("eta thresholds") {
  CHECK(std::fabs(eta(1).to_double() - 0.381966) < 1e-6);
  CHECK(std::fabs(eta(2).to_double() - 0.618034) < 1e-6);
  CHECK(std::fabs(eta(3).to_double() - 0.763932) < 1e-6);
}

TEST_CASE("gram table and basis change") {
  CHECK(dot(basis_vector(0), basis_vector(1)) == Qr5(Rational(-1, 4), Rational(1, 4)));
  CHECK(dot(basis_vector(0), basis_vector(0)) == Qr5(1));
  PointV s;
  for (int j = 0; j < 5; ++j) s += basis_vector(j);
  CHECK(s == PointV{0, 0});
  CHECK(dot(s, basis_vector(0)).is_zero());
  for (int j = 0; j < 5; ++j) {
    XY c = to_cartesian(basis_vector(j));
    CHECK(std::fabs(c.x - std::cos(2 * M_PI * j / 5)) < 1e-12);
    CHECK(std::fabs(c.y - std::sin(2 * M_PI * j / 5)) < 1e-12);
    for (int k = 0; k < 5; ++k) {
      XY d = to_cartesian(basis_vector(k));
      CHECK(std::fabs(dot(basis_vector(j), basis_vector(k)).to_double() - (c.x * d.x + c.y * d.y)) < 1e-12);
      CHECK(gram(j, k) == dot(basis_vector(j), basis_vector(k)));
    }
  }
  XY v2 = to_cartesian(basis_vector(2));
  CHECK(v2.x == doctest::Approx(-0.809017).epsilon(1e-6));
  CHECK(v2.y == doctest::Approx(0.587785).epsilon(1e-6));
  XY v4 = to_cartesian(Qr5::alpha() * basis_vector(0) - basis_vector(1));
  CHECK(v4.x == doctest::Approx(0.309017).epsilon(1e-6));
  CHECK(v4.y == doctest::Approx(-0.951057).epsilon(1e-6));
  XY o = to_cartesian(PointV{});
  CHECK(o.x == 0);
  CHECK(o.y == 0);
}

TEST_CASE("random dot products match floats") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    PointV x{random_qr5(rng), random_qr5(rng)}, y{random_qr5(rng), random_qr5(rng)};
    XY a = to_cartesian(x), b = to_cartesian(y);
    double ref = a.x * b.x + a.y * b.y;
    CHECK(std::fabs(dot(x, y).to_double() - ref) <= 1e-9 * (1 + std::fabs(ref)));
    CHECK(dot(x, y) == dot(y, x));
  }
}

TEST_CASE("directions and the lattice Z[zeta]") {
  for (int j = 0; j < 5; ++j) {
    DirectionV d = DirectionV::perp(j);
    CHECK(dot(d.generator, basis_vector(j)).is_zero());
    CHECK(d == DirectionV(-d.generator));
    CHECK(ZVec::family(j).point() == basis_vector(j));
    CHECK(ZVec::family(j).rotate() == ZVec::family(j + 1));
    CHECK(rotate72(basis_vector(j)) == basis_vector(j + 1));
  }
  CHECK(!(DirectionV(basis_vector(0) + basis_vector(1)) == DirectionV(basis_vector(0))));
  CHECK_THROWS(DirectionV(PointV{}));
  CHECK(lattice_sum({1, 1, 1, 1, 1}) == ZVec{});
}

TEST_CASE("approx filter") {
  Approx x(Qr5::golden());
  CHECK(sign(x - Approx(1)) == 1);
  CHECK(floor_int(x) == 1);
  Approx z = Approx(Qr5::golden()) - Approx(Qr5::alpha()) - Approx(1);
  CHECK_THROWS_AS(sign(z), Uncertain);
  int r = filtered([&](auto tag) {
    using S = decltype(tag);
    return sign(lift<S>(Qr5::golden()) - lift<S>(Qr5::alpha()) - S(1));
  });
  CHECK(r == 0);
}
