#include "cohen/types.hpp"

#include <algorithm>
#include <cmath>

namespace cohen {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string to_string(i128 v) {
  if (v >= 0) return to_string(static_cast<u128>(v));
  return "-" + to_string(static_cast<u128>(-(v + 1)) + 1);
}

std::optional<u128> checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

std::optional<u128> checked_pow(u128 base, unsigned exp) {
  if (exp == 0) return u128{1};
  if (base <= 1) return base;
  u128 result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    auto next = checked_mul(result, base);
    if (!next) return std::nullopt;
    result = *next;
  }
  return result;
}

unsigned bits_for_power(std::uint64_t base, unsigned exp) {
  if (base <= 1) return 1;
  return static_cast<unsigned>(
      std::ceil(static_cast<double>(exp) * std::log2(static_cast<double>(base))));
}

}  // namespace cohen
