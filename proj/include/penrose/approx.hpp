// Midpoint-radius floating-point enclosures used as a filter in front of
// exact Q(sqrt5) arithmetic.  Every operation widens the radius enough to
// cover rounding, so a decided sign or floor is always correct.  When a
// decision cannot be made, Uncertain is thrown and the caller reruns the
// computation with Qr5.
#pragma once

#include <cmath>
#include <limits>

#include "penrose/qr5.hpp"

namespace penrose {

struct Uncertain {};

class Approx {
 public:
  Approx() = default;
  Approx(int v) : m_(v) {}  // NOLINT(google-explicit-constructor)
  Approx(long long v) : m_(static_cast<double>(v)), r_(slack(static_cast<double>(v))) {}  // NOLINT
  explicit Approx(const Qr5& x) {
    double a = x.a().to_double(), b = x.b().to_double();
    m_ = a + b * 2.23606797749979;
    r_ = 4 * kEps * (std::fabs(a) + 3 * std::fabs(b)) + kTiny;
  }
  Approx(double m, double r) : m_(m), r_(r) {}

  double mid() const { return m_; }
  double rad() const { return r_; }

  friend Approx operator+(Approx x, Approx y) {
    double m = x.m_ + y.m_;
    return {m, x.r_ + y.r_ + slack(m)};
  }
  friend Approx operator-(Approx x, Approx y) {
    double m = x.m_ - y.m_;
    return {m, x.r_ + y.r_ + slack(m)};
  }
  friend Approx operator*(Approx x, Approx y) {
    double m = x.m_ * y.m_;
    return {m, std::fabs(x.m_) * y.r_ + std::fabs(y.m_) * x.r_ + x.r_ * y.r_ + slack(m)};
  }
  friend Approx operator/(Approx x, Approx y) {
    double den = std::fabs(y.m_) - y.r_;
    if (!(den > 0)) throw Uncertain{};
    double m = x.m_ / y.m_;
    return {m, (x.r_ + std::fabs(m) * y.r_) / den + slack(m)};
  }
  Approx operator-() const { return {-m_, r_}; }
  Approx& operator+=(Approx o) { return *this = *this + o; }
  Approx& operator-=(Approx o) { return *this = *this - o; }
  Approx& operator*=(Approx o) { return *this = *this * o; }

 private:
  static constexpr double kEps = std::numeric_limits<double>::epsilon();
  static constexpr double kTiny = 1e-300;
  static double slack(double m) { return 2 * kEps * std::fabs(m) + kTiny; }

  double m_ = 0;
  double r_ = 0;
};

inline int sign(const Approx& x) {
  if (x.mid() > x.rad()) return 1;
  if (x.mid() < -x.rad()) return -1;
  throw Uncertain{};
}

inline long long floor_int(const Approx& x) {
  double lo = std::floor(x.mid() - x.rad());
  double hi = std::floor(x.mid() + x.rad());
  if (lo != hi || std::fabs(lo) > 1e15) throw Uncertain{};
  return static_cast<long long>(lo);
}

// Conversion of exact constants into the working scalar type.
template <class S>
S lift(const Qr5& x);
template <>
inline Qr5 lift<Qr5>(const Qr5& x) {
  return x;
}
template <>
inline Approx lift<Approx>(const Qr5& x) {
  return Approx(x);
}

// Runs f with the filter type first and with exact arithmetic if the filter
// cannot decide.  f is a generic callable taking a tag value of the scalar
// type, e.g. [&](auto tag) { using S = decltype(tag); ... }.
template <class F>
auto filtered(F&& f) {
  try {
    return f(Approx{});
  } catch (const Uncertain&) {
    return f(Qr5{});
  }
}

}  // namespace penrose
