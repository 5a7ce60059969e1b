#include "kclab/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace kclab::num {

BigInt::BigInt(std::int64_t v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  std::uint64_t u = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  mag_.push_back(static_cast<std::uint32_t>(u));
  if (u >> 32) mag_.push_back(static_cast<std::uint32_t>(u >> 32));
}

BigInt BigInt::from_uint64(std::uint64_t v) {
  BigInt r;
  if (v == 0) return r;
  r.sign_ = 1;
  r.mag_.push_back(static_cast<std::uint32_t>(v));
  if (v >> 32) r.mag_.push_back(static_cast<std::uint32_t>(v >> 32));
  return r;
}

BigInt BigInt::pow2(unsigned k) {
  BigInt r;
  r.sign_ = 1;
  r.mag_.assign(k / 32 + 1, 0);
  r.mag_.back() = 1u << (k % 32);
  return r;
}

BigInt BigInt::from_decimal(const std::string& s) {
  std::size_t i = 0;
  int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  if (i >= s.size()) throw std::invalid_argument("empty integer literal");
  BigInt r;
  const BigInt ten(10);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad integer literal: " + s);
    r *= ten;
    r += BigInt(s[i] - '0');
  }
  if (sign < 0) r = -r;
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const BigInt& a, const BigInt& b) {
  if (a.mag_.size() != b.mag_.size()) return a.mag_.size() < b.mag_.size() ? -1 : 1;
  for (std::size_t i = a.mag_.size(); i-- > 0;) {
    if (a.mag_[i] != b.mag_[i]) return a.mag_[i] < b.mag_[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& lo = a.size() >= b.size() ? b : a;
  const auto& hi = a.size() >= b.size() ? a : b;
  std::vector<std::uint32_t> out(hi.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < hi.size(); ++i) {
    std::uint64_t s = carry + hi[i] + (i < lo.size() ? lo[i] : 0);
    out[i] = static_cast<std::uint32_t>(s);
    carry = s >> 32;
  }
  out.back() = static_cast<std::uint32_t>(carry);
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (d < 0) {
      d += (std::int64_t{1} << 32);
      borrow = 1;
    } else {
      borrow = 0;
    }
    out[i] = static_cast<std::uint32_t>(d);
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt& BigInt::operator+=(const BigInt& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (sign_ == o.sign_) {
    mag_ = add_mag(mag_, o.mag_);
  } else {
    int c = cmp_mag(*this, o);
    if (c == 0) {
      sign_ = 0;
      mag_.clear();
    } else if (c > 0) {
      mag_ = sub_mag(mag_, o.mag_);
    } else {
      mag_ = sub_mag(o.mag_, mag_);
      sign_ = o.sign_;
    }
  }
  trim();
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& o) { return *this += -o; }

BigInt& BigInt::operator*=(const BigInt& o) {
  if (is_zero() || o.is_zero()) {
    sign_ = 0;
    mag_.clear();
    return *this;
  }
  std::vector<std::uint32_t> out(mag_.size() + o.mag_.size(), 0);
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.mag_.size(); ++j) {
      std::uint64_t cur = out[i + j] + static_cast<std::uint64_t>(mag_[i]) * o.mag_[j] + carry;
      out[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    std::size_t k = i + o.mag_.size();
    while (carry) {
      std::uint64_t cur = out[k] + carry;
      out[k] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  mag_ = std::move(out);
  sign_ = sign_ * o.sign_;
  trim();
  return *this;
}

std::size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  std::uint32_t top = mag_.back();
  std::size_t bits = 0;
  while (top) {
    ++bits;
    top >>= 1;
  }
  return (mag_.size() - 1) * 32 + bits;
}

BigInt BigInt::shl(unsigned bits) const {
  if (is_zero()) return *this;
  BigInt r;
  r.sign_ = sign_;
  unsigned limb = bits / 32, off = bits % 32;
  r.mag_.assign(mag_.size() + limb + 1, 0);
  for (std::size_t i = 0; i < mag_.size(); ++i) {
    r.mag_[i + limb] |= mag_[i] << off;
    if (off) r.mag_[i + limb + 1] |= static_cast<std::uint32_t>(static_cast<std::uint64_t>(mag_[i]) >> (32 - off));
  }
  r.trim();
  return r;
}

namespace {
bool bit_at(const std::vector<std::uint32_t>& mag, std::size_t i) {
  return (mag[i / 32] >> (i % 32)) & 1u;
}
}  // namespace

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.is_zero()) throw std::invalid_argument("division by zero");
  BigInt av = a.abs(), bv = b.abs();
  if (cmp_mag(av, bv) < 0) {
    q = BigInt();
    r = a;
    return;
  }
  // Binary long division, msb to lsb. Numbers stay desk-scale, so O(bits^2) is fine.
  std::size_t nbits = av.bit_length();
  BigInt rem, quo;
  quo.mag_.assign(av.mag_.size(), 0);
  for (std::size_t i = nbits; i-- > 0;) {
    rem = rem.shl(1);
    if (bit_at(av.mag_, i)) {
      if (rem.mag_.empty()) rem.mag_.push_back(1);
      else rem.mag_[0] |= 1u;
      rem.sign_ = 1;
    }
    if (cmp_mag(rem, bv) >= 0) {
      rem.mag_ = sub_mag(rem.mag_, bv.mag_);
      rem.trim();
      quo.mag_[i / 32] |= 1u << (i % 32);
    }
  }
  quo.sign_ = 1;
  quo.trim();
  int qsign = a.sign_ * b.sign_;
  if (qsign < 0) quo.sign_ = quo.is_zero() ? 0 : -1;
  if (a.sign_ < 0) rem.sign_ = rem.is_zero() ? 0 : -1;
  else rem.sign_ = rem.is_zero() ? 0 : 1;
  q = std::move(quo);
  r = std::move(rem);
}

BigInt& BigInt::operator/=(const BigInt& o) {
  BigInt q, r;
  divmod(*this, o, q, r);
  return *this = q;
}

BigInt& BigInt::operator%=(const BigInt& o) {
  BigInt q, r;
  divmod(*this, o, q, r);
  return *this = r;
}

bool operator==(const BigInt& a, const BigInt& b) {
  return a.sign_ == b.sign_ && a.mag_ == b.mag_;
}

bool operator<(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  int c = BigInt::cmp_mag(a, b);
  return a.sign_ >= 0 ? c < 0 : c > 0;
}

bool BigInt::fits_uint64() const {
  return sign_ >= 0 && mag_.size() <= 2;
}

std::uint64_t BigInt::to_uint64() const {
  if (!fits_uint64()) throw std::overflow_error("BigInt does not fit in uint64");
  std::uint64_t v = 0;
  if (mag_.size() > 0) v |= mag_[0];
  if (mag_.size() > 1) v |= static_cast<std::uint64_t>(mag_[1]) << 32;
  return v;
}

double BigInt::frac_mantissa(long& exp2) const {
  if (is_zero()) {
    exp2 = 0;
    return 0.0;
  }
  std::size_t bits = bit_length();
  std::uint64_t mant = 0;
  std::size_t take = bits < 64 ? bits : 64;
  for (std::size_t i = 0; i < take; ++i) {
    if (bit_at(mag_, bits - take + i)) mant |= std::uint64_t{1} << i;
  }
  exp2 = static_cast<long>(bits);
  return std::ldexp(static_cast<double>(mant), -static_cast<int>(take));
}

double BigInt::to_double() const {
  long e = 0;
  double m = frac_mantissa(e);
  double d = std::ldexp(m, static_cast<int>(e));
  return sign_ < 0 ? -d : d;
}

std::string BigInt::to_decimal() const {
  if (is_zero()) return "0";
  BigInt v = abs();
  const BigInt chunk(1000000000);
  std::string out;
  std::vector<std::uint32_t> parts;
  while (!v.is_zero()) {
    BigInt q, r;
    divmod(v, chunk, q, r);
    parts.push_back(r.is_zero() ? 0 : r.mag_[0]);
    v = std::move(q);
  }
  out = std::to_string(parts.back());
  for (std::size_t i = parts.size() - 1; i-- > 0;) {
    std::string p = std::to_string(parts[i]);
    out += std::string(9 - p.size(), '0') + p;
  }
  return sign_ < 0 ? "-" + out : out;
}

BigInt gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt q, r;
    BigInt::divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt pow(BigInt base, unsigned exp) {
  BigInt r(1);
  while (exp) {
    if (exp & 1u) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

}  // namespace kclab::num
