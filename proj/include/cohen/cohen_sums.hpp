#pragma once

#include <cstdint>
#include <string>

#include "cohen/factor.hpp"
#include "cohen/types.hpp"

namespace cohen {

// Arguments of the Cohen-Ramanujan sum c_r^s(n): the sum of e(n h / r^s) over
// 1 <= h <= r^s with (h, r^s)_s = 1.
struct CohenSumQuery {
  std::uint64_t r;
  unsigned s;
  std::uint64_t n;
};

enum class Evaluator { kDirect, kDivisorSum, kMultiplicative };

const char* to_string(Evaluator e);

struct CohenSumValue {
  i128 value;
  Evaluator evaluator;
};

// Term-count ceiling for the brute-force evaluators.
inline constexpr std::uint64_t kBruteForceGuard = 10'000'000;

// Absolute tolerance for rounding a floating exponential sum to an integer.
inline constexpr double kRoundingTolerance = 1e-6;

// Literal evaluation of the defining exponential sum. Throws GuardExceeded if
// r^s > 10^7 and InternalError if the accumulated sum is not within
// kRoundingTolerance of a real integer.
CohenSumValue crs_direct(const CohenSumQuery& q);

// sum over d | r with d^s | n of d^s mu(r/d).
CohenSumValue crs_divisor_sum(const CohenSumQuery& q);

// Product over p^e || r of the prime-power rule:
//   p^(se) - p^(s(e-1))  if p^(se) | n
//   -p^(s(e-1))          if p^(s(e-1)) | n but p^(se) does not
//   0                    otherwise.
CohenSumValue crs_fast(const CohenSumQuery& q);

// h = m^s * k with k s-power-free.
struct SPowerSplit {
  std::uint64_t m;
  std::uint64_t k;
};

// m collects floor(e/s) copies of every prime p^e || h, k keeps p^(e mod s).
SPowerSplit split_s_power(const FactoredInteger& h, unsigned s);

// c_r^s(h) evaluated through c_r^s(m^s) where h = m^s k.
CohenSumValue crs_of_shift(std::uint64_t r, unsigned s, std::uint64_t h);

// Cohen's k-vector sum c^k(n, r): e(n (x_1 + ... + x_k) / r) summed over
// tuples in [0, r)^k with gcd(x_1, ..., x_k, r) = 1. Throws GuardExceeded if
// r^k > 10^7.
i128 kvector_sum(unsigned k, std::int64_t n, std::uint64_t r);

}  // namespace cohen
