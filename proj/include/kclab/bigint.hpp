#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kclab::num {

/// Arbitrary-precision signed integer. Sign-magnitude, base 2^32 limbs,
/// little-endian, no trailing zero limbs (zero has an empty limb vector).
class BigInt {
 public:
  BigInt() = default;
  BigInt(std::int64_t v);
  static BigInt from_uint64(std::uint64_t v);
  static BigInt pow2(unsigned k);
  static BigInt from_decimal(const std::string& s);

  bool is_zero() const { return mag_.empty(); }
  bool is_negative() const { return sign_ < 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt& operator+=(const BigInt& o);
  BigInt& operator-=(const BigInt& o);
  BigInt& operator*=(const BigInt& o);
  BigInt& operator/=(const BigInt& o);
  BigInt& operator%=(const BigInt& o);

  friend BigInt operator+(BigInt a, const BigInt& b) { return a += b; }
  friend BigInt operator-(BigInt a, const BigInt& b) { return a -= b; }
  friend BigInt operator*(BigInt a, const BigInt& b) { return a *= b; }
  friend BigInt operator/(BigInt a, const BigInt& b) { return a /= b; }
  friend BigInt operator%(BigInt a, const BigInt& b) { return a %= b; }

  // Quotient truncates toward zero; remainder has the dividend's sign.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  friend bool operator==(const BigInt& a, const BigInt& b);
  friend bool operator!=(const BigInt& a, const BigInt& b) { return !(a == b); }
  friend bool operator<(const BigInt& a, const BigInt& b);
  friend bool operator>(const BigInt& a, const BigInt& b) { return b < a; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return !(b < a); }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return !(a < b); }

  BigInt shl(unsigned bits) const;
  std::size_t bit_length() const;

  bool fits_uint64() const;
  std::uint64_t to_uint64() const;
  double to_double() const;
  /// Writes |value| = m * 2^e with m in [0.5, 1); returns m. Zero gives (0, 0).
  double frac_mantissa(long& exp2) const;

  std::string to_decimal() const;

 private:
  int sign_ = 0;                     // -1, 0, +1
  std::vector<std::uint32_t> mag_;   // |value|

  void trim();
  static int cmp_mag(const BigInt& a, const BigInt& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

BigInt gcd(BigInt a, BigInt b);
BigInt pow(BigInt base, unsigned exp);

}  // namespace kclab::num
