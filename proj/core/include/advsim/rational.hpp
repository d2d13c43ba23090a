#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

#include "advsim/errors.hpp"

namespace advsim {

// Exact rational arithmetic over 128-bit integers. Always normalized
// (gcd 1, positive denominator). Operations throw std::overflow_error
// instead of silently wrapping; the closed-form checks in this project
// stay far below the 2^127 range.
class Rational {
 public:
  using Int = __int128;

  constexpr Rational() = default;
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rational(long long n, long long d) : num_(n), den_(d) { normalize(); }

  static Rational from_int128(Int n, Int d) {
    Rational r;
    r.num_ = n;
    r.den_ = d;
    r.normalize();
    return r;
  }

  // Parses "17", "-3.5", "0.125" as exact rationals (denominator 10^k).
  static Rational from_decimal(std::string_view text);

  Int num() const { return num_; }
  Int den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  bool is_zero() const { return num_ == 0; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  Rational operator-() const { return from_int128(-num_, den_); }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return from_int128(checked_add(checked_mul(a.num_, b.den_), checked_mul(b.num_, a.den_)),
                       checked_mul(a.den_, b.den_));
  }
  friend Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return from_int128(checked_mul(a.num_, b.num_), checked_mul(a.den_, b.den_));
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational division by zero");
    return from_int128(checked_mul(a.num_, b.den_), checked_mul(a.den_, b.num_));
  }

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return checked_mul(a.num_, b.den_) < checked_mul(b.num_, a.den_);
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  // "num/den", or just "num" for integers.
  std::string str() const;

 private:
  static Int checked_mul(Int a, Int b) {
    Int out;
    if (__builtin_mul_overflow(a, b, &out)) throw std::overflow_error("rational overflow (mul)");
    return out;
  }
  static Int checked_add(Int a, Int b) {
    Int out;
    if (__builtin_add_overflow(a, b, &out)) throw std::overflow_error("rational overflow (add)");
    return out;
  }
  static Int gcd128(Int a, Int b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      Int t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    if (num_ == 0) {
      den_ = 1;
      return;
    }
    Int g = gcd128(num_, den_);
    num_ /= g;
    den_ /= g;
  }

  Int num_ = 0;
  Int den_ = 1;
};

std::string int128_str(__int128 v);

}  // namespace advsim
