#include "cohen/rational.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace cohen {

BigInt to_bigint(u128 v) {
  BigInt hi = static_cast<std::uint64_t>(v >> 64);
  BigInt lo = static_cast<std::uint64_t>(v);
  return (hi << 64) | lo;
}

BigInt to_bigint(i128 v) {
  if (v >= 0) return to_bigint(static_cast<u128>(v));
  return -to_bigint(static_cast<u128>(-(v + 1)) + 1);
}

BigRational::BigRational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ == 0) throw InvalidArgument("BigRational: zero denominator");
  normalize();
}

void BigRational::normalize() {
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g != 1) {
    num_ /= g;
    den_ /= g;
  }
}

BigRational BigRational::from_double(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("BigRational: non-finite double");
  int exp = 0;
  double mant = std::frexp(v, &exp);
  // 53 significant bits: mant * 2^53 is an exact integer.
  auto scaled = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return BigRational(num, den);
}

double BigRational::to_double() const {
  using boost::multiprecision::cpp_bin_float_double;
  cpp_bin_float_double n(num_);
  cpp_bin_float_double d(den_);
  return static_cast<double>(n / d);
}

std::string BigRational::to_string() const {
  if (den_ == 1) return num_.str();
  return num_.str() + "/" + den_.str();
}

BigRational BigRational::operator-() const {
  BigRational out = *this;
  out.num_ = -out.num_;
  return out;
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
  return *this += -rhs;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.num_ == 0) throw InvalidArgument("BigRational: division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

std::strong_ordering operator<=>(const BigRational& a, const BigRational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace cohen
