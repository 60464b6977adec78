#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <compare>
#include <string>

#include "cohen/types.hpp"

namespace cohen {

using BigInt = boost::multiprecision::cpp_int;

BigInt to_bigint(i128 v);
BigInt to_bigint(u128 v);

// Exact rational number, always stored in lowest terms with a positive
// denominator. Zero is 0/1.
class BigRational {
 public:
  BigRational() = default;
  BigRational(long long v) : num_(v) {}  // NOLINT: implicit from integers
  BigRational(BigInt numerator, BigInt denominator);

  // Exact value of a finite double.
  static BigRational from_double(double v);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  double to_double() const;
  std::string to_string() const;

  BigRational operator-() const;
  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);

  friend BigRational operator+(BigRational a, const BigRational& b) { return a += b; }
  friend BigRational operator-(BigRational a, const BigRational& b) { return a -= b; }
  friend BigRational operator*(BigRational a, const BigRational& b) { return a *= b; }
  friend BigRational operator/(BigRational a, const BigRational& b) { return a /= b; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const BigRational& a,
                                          const BigRational& b);

 private:
  void normalize();

  BigInt num_ = 0;
  BigInt den_ = 1;
};

}  // namespace cohen
