#include "kclab/rational.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace kclab::num {

Rational::Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::invalid_argument("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.is_negative()) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = gcd(num_, den_);
  num_ = num_ / g;
  den_ = den_ / g;
}

Rational Rational::parse(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(BigInt::from_decimal(s), BigInt(1));
  return Rational(BigInt::from_decimal(s.substr(0, slash)),
                  BigInt::from_decimal(s.substr(slash + 1)));
}

Rational Rational::pow2(int e) {
  if (e >= 0) return Rational(BigInt::pow2(static_cast<unsigned>(e)), BigInt(1));
  return Rational(BigInt(1), BigInt::pow2(static_cast<unsigned>(-e)));
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_.is_zero()) throw std::invalid_argument("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

bool operator<(const Rational& a, const Rational& b) {
  return a.num_ * b.den_ < b.num_ * a.den_;
}

BigInt Rational::ceil() const {
  BigInt q, r;
  BigInt::divmod(num_, den_, q, r);
  if (!r.is_zero() && num_.sign() > 0) q += BigInt(1);
  return q;
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_decimal();
  return num_.to_decimal() + "/" + den_.to_decimal();
}

double Rational::to_double() const {
  if (num_.is_zero()) return 0.0;
  long en = 0, ed = 0;
  double mn = num_.frac_mantissa(en);
  double md = den_.frac_mantissa(ed);
  double d = std::ldexp(mn / md, static_cast<int>(en - ed));
  return num_.sign() < 0 ? -d : d;
}

std::string Rational::to_decimal(int significant) const {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant, to_double());
  return buf;
}

}  // namespace kclab::num
