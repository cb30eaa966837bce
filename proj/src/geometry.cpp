#include "penrose/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace penrose {

Qr5 cos72() { return {Rational(-1, 4), Rational(1, 4)}; }
Qr5 cos144() { return {Rational(-1, 4), Rational(-1, 4)}; }
Qr5 sin72_squared() { return {Rational(5, 8), Rational(1, 8)}; }

const Qr5& gram(int i, int j) {
  static const Qr5 one = 1, c1 = cos72(), c2 = cos144();
  int d = ((i - j) % 5 + 5) % 5;
  if (d == 0) return one;
  return (d == 1 || d == 4) ? c1 : c2;
}

const PointV& basis_vector(int j) {
  static const std::array<PointV, 5> v = [] {
    Qr5 a = Qr5::alpha();
    return std::array<PointV, 5>{PointV{1, 0}, PointV{0, 1}, PointV{-1, a}, PointV{-a, -a}, PointV{a, -1}};
  }();
  return v[((j % 5) + 5) % 5];
}

XY to_cartesian(double p, double q) {
  static const double c = std::cos(2 * M_PI / 5), s = std::sin(2 * M_PI / 5);
  return {p + q * c, q * s};
}

XY to_cartesian(const PointV& x) { return to_cartesian(x.p.to_double(), x.q.to_double()); }

DirectionV::DirectionV(PointV g, std::optional<int> t) : generator(std::move(g)), tag(t) {
  if (generator.p.is_zero() && generator.q.is_zero()) throw std::invalid_argument("direction with zero generator");
}

DirectionV DirectionV::perp(int j) {
  // v_{j+1} - cos72 v_j is orthogonal to v_j
  return DirectionV(basis_vector(j + 1) - cos72() * basis_vector(j), ((j % 5) + 5) % 5);
}

bool operator==(const DirectionV& a, const DirectionV& b) { return cross_sign(a.generator, b.generator) == 0; }

ZVec ZVec::family(int j) {
  static const std::array<ZVec, 5> f = {ZVec{{1, 0, 0, 0}}, ZVec{{0, 0, 1, 0}}, ZVec{{-1, 0, 0, 1}},
                                        ZVec{{0, -1, 0, -1}}, ZVec{{0, 1, -1, 0}}};
  return f[((j % 5) + 5) % 5];
}

ZVec ZVec::rotate() const {
  // v0 -> v1, a v0 -> a v1, v1 -> -v0 + a v1, a v1 -> -a v0 + (1 - a) v1
  return ZVec{{-c[2], -c[3], c[0] + c[3], c[1] + c[2] - c[3]}};
}

ZVec ZVec::rotate(int times) const {
  ZVec r = *this;
  for (int i = 0; i < ((times % 5) + 5) % 5; ++i) r = r.rotate();
  return r;
}

PointV ZVec::point() const {
  Qr5 a = Qr5::alpha();
  return {Qr5(c[0]) + Qr5(c[1]) * a, Qr5(c[2]) + Qr5(c[3]) * a};
}

Vec2<Approx> ZVec::approx() const {
  static const Approx a = Approx(Qr5::alpha());
  return {Approx(c[0]) + Approx(c[1]) * a, Approx(c[2]) + Approx(c[3]) * a};
}

ZVec operator+(const ZVec& x, const ZVec& y) {
  ZVec r;
  for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] + y.c[i];
  return r;
}

ZVec operator-(const ZVec& x, const ZVec& y) {
  ZVec r;
  for (int i = 0; i < 4; ++i) r.c[i] = x.c[i] - y.c[i];
  return r;
}

ZVec operator*(long long s, const ZVec& x) {
  ZVec r;
  for (int i = 0; i < 4; ++i) r.c[i] = s * x.c[i];
  return r;
}

ZVec lattice_sum(const std::array<long long, 5>& m) {
  ZVec r;
  for (int j = 0; j < 5; ++j) r = r + m[j] * ZVec::family(j);
  return r;
}

PointV rotate72(const PointV& x, int times) {
  PointV r = x;
  Qr5 a = Qr5::alpha();
  for (int i = 0; i < ((times % 5) + 5) % 5; ++i) r = PointV{-r.q, r.p + a * r.q};
  return r;
}

std::string to_string(const PointV& x) { return "(" + x.p.str() + ", " + x.q.str() + ")"; }

}  // namespace penrose
