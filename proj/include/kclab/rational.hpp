#pragma once

#include <cstdint>
#include <string>

#include "kclab/bigint.hpp"

namespace kclab::num {

/// Exact rational number. Always normalized: denominator > 0, gcd(num, den) = 1,
/// zero is 0/1. All library probabilities and bounds are carried as Rationals;
/// doubles appear only in rendered decimal approximations.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t v) : num_(v), den_(1) {}
  Rational(std::int64_t n, std::int64_t d) : Rational(BigInt(n), BigInt(d)) {}
  Rational(BigInt n, BigInt d);
  explicit Rational(BigInt n) : num_(std::move(n)), den_(1) {}

  /// Parses "p", "p/q", decimal signs allowed.
  static Rational parse(const std::string& s);
  /// 2^e for any integer e (negative exponents allowed).
  static Rational pow2(int e);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }
  bool is_integer() const { return den_ == BigInt(1); }

  Rational operator-() const;
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// Smallest integer >= value.
  BigInt ceil() const;

  /// "p" when integral, "p/q" otherwise.
  std::string to_string() const;
  double to_double() const;
  /// Decimal approximation with the given significant digits (rendering only).
  std::string to_decimal(int significant = 12) const;

 private:
  BigInt num_, den_;
  void normalize();
};

}  // namespace kclab::num
