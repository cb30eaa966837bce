// Planar geometry in the basis {v0, v1}, where v_j = (cos 72j deg, sin 72j deg).
//
//   v2 = -v0 + a v1,  v3 = -a v0 - a v1,  v4 = a v0 - v1     (a = alpha)
#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "penrose/approx.hpp"
#include "penrose/qr5.hpp"

namespace penrose {

// p v0 + q v1.
template <class S>
struct Vec2 {
  S p{};
  S q{};

  friend Vec2 operator+(const Vec2& x, const Vec2& y) { return {x.p + y.p, x.q + y.q}; }
  friend Vec2 operator-(const Vec2& x, const Vec2& y) { return {x.p - y.p, x.q - y.q}; }
  friend Vec2 operator*(const S& s, const Vec2& x) { return {s * x.p, s * x.q}; }
  Vec2 operator-() const { return {-p, -q}; }
  Vec2& operator+=(const Vec2& o) { return *this = *this + o; }
  Vec2& operator-=(const Vec2& o) { return *this = *this - o; }
  friend bool operator==(const Vec2& x, const Vec2& y) { return x.p == y.p && x.q == y.q; }
};

using PointV = Vec2<Qr5>;

struct PointVHash {
  std::size_t operator()(const PointV& x) const { return x.p.hash() * 1000003u ^ x.q.hash(); }
};

// cos 72 deg = (sqrt5 - 1)/4 and cos 144 deg = -(1 + sqrt5)/4.
Qr5 cos72();
Qr5 cos144();
// sin^2 72 deg = (5 + sqrt5)/8.
Qr5 sin72_squared();

// v_i . v_j
const Qr5& gram(int i, int j);
const PointV& basis_vector(int j);

template <class S>
Vec2<S> lift(const PointV& x) {
  return {lift<S>(x.p), lift<S>(x.q)};
}

template <class S>
S dot(const Vec2<S>& x, const Vec2<S>& y) {
  static const S c = lift<S>(cos72());
  return x.p * y.p + x.q * y.q + c * (x.p * y.q + x.q * y.p);
}

// v_j . x, using the precomputed Gram row.
template <class S>
S dot_family(int j, const Vec2<S>& x) {
  static const std::array<std::array<S, 2>, 5> row = [] {
    std::array<std::array<S, 2>, 5> r;
    for (int l = 0; l < 5; ++l) r[l] = {lift<S>(gram(l, 0)), lift<S>(gram(l, 1))};
    return r;
  }();
  return row[j][0] * x.p + row[j][1] * x.q;
}

// Sign of the planar cross product x ^ y (positive when y is
// counterclockwise from x).  The basis has positive orientation, so this is
// the sign of p_x q_y - q_x p_y.
template <class S>
int cross_sign(const Vec2<S>& x, const Vec2<S>& y) {
  return sign(x.p * y.q - x.q * y.p);
}

struct XY {
  double x = 0;
  double y = 0;
};

XY to_cartesian(const PointV& x);
XY to_cartesian(double p, double q);

// A line through the origin, given by a nonzero generator.
struct DirectionV {
  PointV generator;
  std::optional<int> tag;  // j when the direction is v_j-perpendicular

  explicit DirectionV(PointV g, std::optional<int> t = std::nullopt);
  // The direction perpendicular to v_j.
  static DirectionV perp(int j);

  friend bool operator==(const DirectionV& a, const DirectionV& b);
};

// Element of the lattice Z[zeta] = span_Z {v0, ..., v4}, stored as
// (c0 + c1 a) v0 + (c2 + c3 a) v1 with integer c.
struct ZVec {
  std::array<long long, 4> c{};

  static ZVec family(int j);
  ZVec rotate() const;  // multiplication by zeta: v_j -> v_{j+1}
  ZVec rotate(int times) const;
  PointV point() const;  // exact value in the {v0, v1} basis
  Vec2<Approx> approx() const;

  friend ZVec operator+(const ZVec& x, const ZVec& y);
  friend ZVec operator-(const ZVec& x, const ZVec& y);
  friend ZVec operator*(long long s, const ZVec& x);
  friend bool operator==(const ZVec& x, const ZVec& y) { return x.c == y.c; }
  friend bool operator<(const ZVec& x, const ZVec& y) { return x.c < y.c; }
};

struct ZVecHash {
  std::size_t operator()(const ZVec& z) const {
    std::size_t h = 0;
    for (long long v : z.c) h = h * 1000003u ^ std::hash<long long>()(v);
    return h;
  }
};

// W^t m = sum_j m_j v_j as a lattice vector.
ZVec lattice_sum(const std::array<long long, 5>& m);

// Exact rotation by 72 degrees.
PointV rotate72(const PointV& x, int times = 1);

std::string to_string(const PointV& x);

}  // namespace penrose
