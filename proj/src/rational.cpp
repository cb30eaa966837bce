#include "penrose/rational.hpp"

#include <bit>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace penrose {

namespace {

using u128 = unsigned __int128;
using i128 = __int128;

int ctz128(u128 x) {
  auto lo = static_cast<std::uint64_t>(x);
  if (lo != 0) return std::countr_zero(lo);
  return 64 + std::countr_zero(static_cast<std::uint64_t>(x >> 64));
}

u128 gcd128(u128 a, u128 b) {
  if (a == 0) return b;
  if (b == 0) return a;
  if ((a >> 64) == 0 && (b >> 64) == 0)
    return std::gcd(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
  int shift = ctz128(a | b);
  a >>= ctz128(a);
  do {
    b >>= ctz128(b);
    if (a > b) std::swap(a, b);
    b -= a;
  } while (b != 0);
  return a << shift;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max();
}

mpz_class mpz_from(i128 v) {
  bool neg = v < 0;
  u128 m = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
  mpz_class r = static_cast<unsigned long>(static_cast<std::uint64_t>(m >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(m));
  if (neg) r = -r;
  return r;
}

mpz_class mpz_from(long long v) {
  mpz_class r;
  mpz_set_si(r.get_mpz_t(), v);
  return r;
}

long long checked(const mpz_class& z) {
  if (!mpz_fits_slong_p(z.get_mpz_t())) throw std::overflow_error("integer does not fit in 64 bits");
  return mpz_get_si(z.get_mpz_t());
}

}  // namespace

Rational::Rational(long long n, long long d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  *this = from_wide(n, d);
}

Rational::Rational(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  *this = from_mpq(std::move(c));
}

Rational Rational::from_wide(i128 n, i128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  u128 an = n < 0 ? -static_cast<u128>(n) : static_cast<u128>(n);
  u128 g = gcd128(an, static_cast<u128>(d));
  if (g > 1) {
    n /= static_cast<i128>(g);
    d /= static_cast<i128>(g);
  }
  Rational r;
  if (fits64(n) && fits64(d)) {
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }
  mpq_class q;
  q.get_num() = mpz_from(n);
  q.get_den() = mpz_from(d);
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::from_mpq(mpq_class q) {
  Rational r;
  if (mpz_fits_slong_p(q.get_num_mpz_t()) && mpz_fits_slong_p(q.get_den_mpz_t())) {
    r.num_ = mpz_get_si(q.get_num_mpz_t());
    r.den_ = mpz_get_si(q.get_den_mpz_t());
    return r;
  }
  r.big_ = std::make_shared<const mpq_class>(std::move(q));
  return r;
}

Rational Rational::parse(std::string_view text) {
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string_view ns = text.substr(0, slash);
  std::string_view ds = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_int(ns) || !is_int(ds) || ds[0] == '-' || ds[0] == '+')
    throw std::invalid_argument("malformed rational: " + std::string(text));
  std::string nn(ns);
  if (nn[0] == '+') nn.erase(0, 1);
  mpq_class q;
  q.get_num() = mpz_class(nn, 10);
  q.get_den() = mpz_class(std::string(ds), 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(q);
}

mpq_class Rational::to_mpq() const {
  if (big_) return *big_;
  mpq_class q;
  q.get_num() = mpz_from(num_);
  q.get_den() = mpz_from(den_);
  return q;
}

double Rational::to_double() const {
  if (big_) return big_->get_d();
  return static_cast<double>(num_) / static_cast<double>(den_);
}

int Rational::sign() const {
  if (big_) return sgn(*big_);
  return (num_ > 0) - (num_ < 0);
}

bool Rational::is_integer() const {
  if (big_) return big_->get_den() == 1;
  return den_ == 1;
}

long long Rational::floor() const {
  if (big_) return checked(floor_z());
  long long q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

long long Rational::ceil() const { return -(-*this).floor(); }

mpz_class Rational::floor_z() const {
  if (!big_) return mpz_from(floor());
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), big_->get_num_mpz_t(), big_->get_den_mpz_t());
  return r;
}

Rational Rational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (big_) return from_mpq(1 / *big_);
  return from_wide(den_, num_);
}

std::string Rational::str() const {
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == b.den_) {
      i128 n = static_cast<i128>(a.num_) + b.num_;
      if (a.den_ == 1 && fits64(n)) {
        Rational r;
        r.num_ = static_cast<long long>(n);
        return r;
      }
      return Rational::from_wide(n, a.den_);
    }
    i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
    return Rational::from_wide(n, static_cast<i128>(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() + b.to_mpq());
}

Rational Rational::operator-() const {
  if (big_) return from_mpq(-*big_);
  if (num_ == std::numeric_limits<long long>::min()) return from_wide(-static_cast<i128>(num_), den_);
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational operator*(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      i128 n = static_cast<i128>(a.num_) * b.num_;
      if (fits64(n)) {
        Rational r;
        r.num_ = static_cast<long long>(n);
        return r;
      }
      return Rational::from_wide(n, 1);
    }
    return Rational::from_wide(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
  }
  return Rational::from_mpq(a.to_mpq() * b.to_mpq());
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("division by zero");
  if (!a.big_ && !b.big_)
    return Rational::from_wide(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
  return Rational::from_mpq(a.to_mpq() / b.to_mpq());
}

int compare(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) {
    i128 l = static_cast<i128>(a.num_) * b.den_;
    i128 r = static_cast<i128>(b.num_) * a.den_;
    return (l > r) - (l < r);
  }
  return cmp(a.to_mpq(), b.to_mpq());
}

bool operator==(const Rational& a, const Rational& b) {
  if (!a.big_ && !b.big_) return a.num_ == b.num_ && a.den_ == b.den_;
  if (!a.big_ || !b.big_) return false;  // canonical form: big values never fit inline
  return *a.big_ == *b.big_;
}

std::size_t Rational::hash() const {
  if (!big_) return std::hash<long long>()(num_) * 1000003u ^ std::hash<long long>()(den_);
  return std::hash<std::string>()(big_->get_str());
}

}  // namespace penrose
