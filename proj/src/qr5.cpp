#include "penrose/qr5.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace penrose {

Qr5 Qr5::golden() { return {Rational(1, 2), Rational(1, 2)}; }
Qr5 Qr5::alpha() { return {Rational(-1, 2), Rational(1, 2)}; }

Qr5 operator*(const Qr5& x, const Qr5& y) {
  if (x.b_.is_zero()) return {x.a_ * y.a_, x.a_ * y.b_};
  if (y.b_.is_zero()) return {x.a_ * y.a_, x.b_ * y.a_};
  return {x.a_ * y.a_ + Rational(5) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_};
}

Qr5 Qr5::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(sqrt5)");
  if (b_.is_zero()) return {a_.inverse(), 0};
  Rational norm = a_ * a_ - Rational(5) * b_ * b_;
  return {a_ / norm, -b_ / norm};
}

int Qr5::sign() const {
  int sa = a_.sign();
  int sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // opposite signs: the larger of a^2 and 5 b^2 wins
  int c = compare(a_ * a_, Rational(5) * b_ * b_);
  return c > 0 ? sa : sb;
}

double Qr5::to_double() const { return a_.to_double() + b_.to_double() * std::sqrt(5.0); }

long long Qr5::floor() const {
  if (b_.is_zero()) return a_.floor();
  double ad = a_.to_double();
  double bd = b_.to_double();
  double x = ad + bd * std::sqrt(5.0);
  double err = 1e-13 * (std::fabs(ad) + 3 * std::fabs(bd)) + 1e-300;
  if (std::isfinite(x) && std::fabs(x) < 1e15) {
    double f = std::floor(x - err);
    if (f == std::floor(x + err)) return static_cast<long long>(f);
  }
  return floor_exact();
}

// Bracket sqrt5 between consecutive continued-fraction convergents
// [2; 4, 4, ...] and refine until the bracket for a + b*sqrt5 contains no
// integer in its interior.  The value is irrational so this terminates.
long long Qr5::floor_exact() const {
  mpz_class p0 = 2, q0 = 1, p1 = 9, q1 = 4;
  auto advance = [&] {
    mpz_class p2 = 4 * p1 + p0, q2 = 4 * q1 + q0;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  };
  while (q1 < 1000000) advance();
  for (;;) {
    Rational c0(mpq_class(p0, q0)), c1(mpq_class(p1, q1));
    Rational e0 = a_ + b_ * c0, e1 = a_ + b_ * c1;
    const Rational& lo = e0 < e1 ? e0 : e1;
    const Rational& hi = e0 < e1 ? e1 : e0;
    long long fl = lo.floor(), fh = hi.floor();
    if (fl == fh) return fl;
    if (hi.is_integer() && fl == fh - 1) return fl;
    advance();
    advance();
  }
}

std::string Qr5::str() const {
  if (b_.is_zero()) return a_.str();
  std::string s;
  if (!a_.is_zero()) s = a_.str() + (b_.sign() > 0 ? "+" : "");
  return s + b_.str() + "*s5";
}

int sign(const Qr5& x) { return x.sign(); }
long long floor_int(const Qr5& x) { return x.floor(); }

Qr5 eta(int i) {
  switch (i) {
    case 0: return 0;
    case 1: return Qr5(2) - Qr5::golden();
    case 2: return Qr5::golden() - Qr5(1);
    case 3: return Qr5(4) - Qr5(2) * Qr5::golden();
    case 4: return 1;
    default: throw std::out_of_range("eta index");
  }
}

Qr5 parse_qr5(std::string_view text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Qr5 {
    throw std::invalid_argument("malformed Q(sqrt5) literal '" + std::string(text) + "': " + why);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_rational = [&]() -> Rational {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == '/') {
      ++i;
      std::size_t ds = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (ds == i) fail("missing denominator");
    }
    return Rational::parse(text.substr(start, i - start));
  };
  auto read_symbol = [&]() -> Qr5 {
    if (text.substr(i, 2) == "s5") {
      i += 2;
      return Qr5::sqrt5();
    }
    if (i < text.size() && text[i] == 'a') {
      ++i;
      return Qr5::alpha();
    }
    if (i < text.size() && text[i] == 'g') {
      ++i;
      return Qr5::golden();
    }
    return fail("expected s5, a or g");
  };
  Qr5 total;
  skip();
  if (i == text.size()) fail("empty");
  bool first = true;
  while (i < text.size()) {
    int sgn = 1;
    skip();
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      sgn = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    if (i >= text.size()) fail("dangling sign");
    Qr5 term;
    if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      Rational c = read_rational();
      if (i < text.size() && text[i] == '.') fail("floating-point values are not accepted");
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
        term = Qr5(c) * read_symbol();
      } else if (i < text.size() && (text[i] == 's' || text[i] == 'a' || text[i] == 'g')) {
        term = Qr5(c) * read_symbol();
      } else {
        term = Qr5(c);
      }
    } else if (text[i] == '.') {
      fail("floating-point values are not accepted");
    } else {
      term = read_symbol();
    }
    total += sgn > 0 ? term : -term;
    skip();
  }
  return total;
}

}  // namespace penrose
