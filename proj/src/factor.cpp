#include "cohen/factor.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "cohen/types.hpp"

namespace cohen {

namespace {

constexpr std::uint64_t kTrialBound = 1'000'000;

const std::vector<std::uint64_t>& trial_primes() {
  static const std::vector<std::uint64_t> primes = primes_up_to(kTrialBound);
  return primes;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Brent's cycle detection with batched gcds. Seeds are fixed, so the result
// is reproducible; the increment is advanced until a proper factor appears.
std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mul_mod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, ys = 2, q = 1, g = 1;
    constexpr std::uint64_t kBatch = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  std::uint64_t d = pollard_brent(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

FactoredInteger::FactoredInteger(std::uint64_t value,
                                 std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {
  if (value_ == 0) throw InvalidArgument("FactoredInteger: value must be >= 1");
  u128 product = 1;
  std::uint64_t previous = 1;
  for (const auto& [p, e] : factors_) {
    if (p <= previous || e == 0) {
      throw InvalidArgument("FactoredInteger: factors must be sorted with "
                            "positive exponents");
    }
    previous = p;
    auto pe = checked_pow(p, e);
    auto next = pe ? checked_mul(product, *pe) : std::nullopt;
    if (!next || *next > value_) {
      throw InvalidArgument("FactoredInteger: factor product exceeds value");
    }
    product = *next;
  }
  if (product != value_) {
    throw InvalidArgument("FactoredInteger: factor product " +
                          cohen::to_string(product) + " != value " +
                          std::to_string(value_));
  }
}

bool FactoredInteger::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

std::uint64_t FactoredInteger::largest_prime() const {
  return factors_.empty() ? 1 : factors_.back().prime;
}

std::string FactoredInteger::to_string() const {
  if (factors_.empty()) return "1";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].prime;
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  const int rank = std::countr_zero(n - 1);
  const std::uint64_t d = (n - 1) >> rank;
  for (std::uint64_t base : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
    std::uint64_t x = pow_mod(base, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < rank; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FactoredInteger factorize(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("factorize: n must be >= 1");
  if (n >= kFactorLimit) {
    throw InvalidArgument("factorize: n must be < 2^63, got " +
                          std::to_string(n));
  }
  std::vector<PrimePower> factors;
  std::uint64_t rest = n;
  for (std::uint64_t p : trial_primes()) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factors.push_back({p, e});
  }
  if (rest > 1) {
    // No factor <= min(sqrt(rest), 10^6) remains; rest is prime unless the
    // trial bound ran out first.
    std::vector<std::uint64_t> large;
    if (rest < kTrialBound * kTrialBound) {
      large.push_back(rest);
    } else {
      split_large(rest, large);
    }
    std::sort(large.begin(), large.end());
    for (std::uint64_t p : large) {
      if (!factors.empty() && factors.back().prime == p) {
        ++factors.back().exponent;
      } else {
        factors.push_back({p, 1});
      }
    }
  }
  return FactoredInteger(n, std::move(factors));
}

}  // namespace cohen
