// Exact rational numbers.
//
// Values whose reduced numerator and denominator fit in 64 bits are kept
// inline; anything larger is promoted to a GMP mpq.  Every operation is
// exact: the inline path detects overflow and falls back to GMP.
#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace penrose {

class Rational {
 public:
  Rational() = default;
  Rational(int v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long v) : num_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);
  explicit Rational(const mpq_class& q);

  // Accepts "n" or "n/d" with optional sign.  Throws std::invalid_argument.
  static Rational parse(std::string_view text);

  mpq_class to_mpq() const;
  double to_double() const;
  int sign() const;
  bool is_zero() const { return !big_ && num_ == 0; }
  bool is_integer() const;
  bool is_small() const { return !big_; }

  // Floor and ceiling.  Throws std::overflow_error if the result does not
  // fit in 64 bits.
  long long floor() const;
  long long ceil() const;
  mpz_class floor_z() const;

  Rational abs() const { return sign() < 0 ? -*this : *this; }
  Rational inverse() const;

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend int compare(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b);
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  std::size_t hash() const;

 private:
  static Rational from_wide(__int128 n, __int128 d);
  static Rational from_mpq(mpq_class q);

  long long num_ = 0;
  long long den_ = 1;
  std::shared_ptr<const mpq_class> big_;
};

}  // namespace penrose
