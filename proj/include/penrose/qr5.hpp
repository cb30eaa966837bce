// Exact elements a + b*sqrt(5) of the field Q(sqrt 5).
#pragma once

#include <string>
#include <string_view>

#include "penrose/rational.hpp"

namespace penrose {

class Qr5 {
 public:
  Qr5() = default;
  Qr5(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Qr5(long long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Qr5(Rational a) : a_(std::move(a)) {}  // NOLINT(google-explicit-constructor)
  Qr5(Rational a, Rational b) : a_(std::move(a)), b_(std::move(b)) {}

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  static Qr5 sqrt5() { return {0, 1}; }
  static Qr5 golden();  // (1 + sqrt5)/2
  static Qr5 alpha();   // 1/golden = golden - 1

  // -1, 0 or +1, decided exactly.
  int sign() const;
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }
  bool is_integer() const { return b_.is_zero() && a_.is_integer(); }

  long long floor() const;
  long long ceil() const { return -(-*this).floor(); }
  // x - floor(x), in [0,1).
  Qr5 frac() const { return *this - Qr5(floor()); }

  double to_double() const;
  Qr5 conjugate() const { return {a_, -b_}; }
  Qr5 abs() const { return sign() < 0 ? -*this : *this; }
  Qr5 inverse() const;

  // Compact literal such as "1/2+3/4*s5"; parse_qr5 reads it back.
  std::string str() const;

  friend Qr5 operator+(const Qr5& x, const Qr5& y) { return {x.a_ + y.a_, x.b_ + y.b_}; }
  friend Qr5 operator-(const Qr5& x, const Qr5& y) { return {x.a_ - y.a_, x.b_ - y.b_}; }
  friend Qr5 operator*(const Qr5& x, const Qr5& y);
  friend Qr5 operator/(const Qr5& x, const Qr5& y) { return x * y.inverse(); }
  Qr5 operator-() const { return {-a_, -b_}; }
  Qr5& operator+=(const Qr5& o) { return *this = *this + o; }
  Qr5& operator-=(const Qr5& o) { return *this = *this - o; }
  Qr5& operator*=(const Qr5& o) { return *this = *this * o; }
  Qr5& operator/=(const Qr5& o) { return *this = *this / o; }

  friend bool operator==(const Qr5& x, const Qr5& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
  friend bool operator<(const Qr5& x, const Qr5& y) { return (x - y).sign() < 0; }
  friend bool operator>(const Qr5& x, const Qr5& y) { return (x - y).sign() > 0; }
  friend bool operator<=(const Qr5& x, const Qr5& y) { return (x - y).sign() <= 0; }
  friend bool operator>=(const Qr5& x, const Qr5& y) { return (x - y).sign() >= 0; }

  std::size_t hash() const { return a_.hash() * 31u ^ b_.hash(); }

 private:
  long long floor_exact() const;

  Rational a_;
  Rational b_;
};

int sign(const Qr5& x);
long long floor_int(const Qr5& x);

// Literal grammar: sums and differences of terms, each term an optional
// rational coefficient times one of s5, a (= alpha), g (= golden), or a bare
// rational.  Products use '*' or juxtaposition after a coefficient, e.g.
// "1/2 + 3/2*s5", "1-a", "2g-2", "-3/10".  Decimal points are rejected.
Qr5 parse_qr5(std::string_view text);

// Named thresholds eta_0..eta_4 = 0, 2-g, g-1, 4-2g, 1.
Qr5 eta(int i);

}  // namespace penrose

template <>
struct std::hash<penrose::Qr5> {
  std::size_t operator()(const penrose::Qr5& x) const { return x.hash(); }
};
