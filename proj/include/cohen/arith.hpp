#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "cohen/factor.hpp"
#include "cohen/types.hpp"

namespace cohen {

// 1 for n = 1, (-1)^t for a squarefree n with t prime factors, 0 otherwise.
int mobius(const FactoredInteger& n);

// Jordan totient J_k(n) = n^k prod_{p|n} (1 - p^-k), evaluated exactly as the
// product of p^(ek) - p^((e-1)k) over the prime powers of n. Throws
// OverflowError if a partial product leaves 128 bits.
u128 jordan(unsigned k, const FactoredInteger& n);

// Largest perfect s-th power l^s dividing both m and n. Equals gcd(m, n) when
// s = 1.
std::uint64_t generalized_gcd(std::uint64_t m, std::uint64_t n, unsigned s);

// Same, with n supplied already factored. Only primes of n can contribute, so
// the gcd is assembled from the p-adic valuations of m at those primes.
u128 generalized_gcd(std::uint64_t m, std::span<const PrimePower> n_factors,
                     unsigned s);

// Number of divisors of n that are perfect s-th powers:
// prod over p^e || n of (floor(e/s) + 1).
std::uint64_t tau_s(unsigned s, const FactoredInteger& n);

// Sum of divisors sigma(n).
u128 divisor_sigma(const FactoredInteger& n);

// Riemann zeta at an integer z >= 2, to absolute error <= precision, via the
// truncated series plus Euler-Maclaurin tail M^(1-z)/(z-1) + M^(-z)/2.
double zeta(unsigned z, double precision = 1e-12);

// Largest error the truncated zeta can make for the given (z, precision); the
// result of zeta(z, precision) + zeta_error_bound(...) is a certified upper
// bound on zeta(z).
double zeta_error_bound(unsigned z, double precision);

enum class SieveKind : std::uint32_t {
  kMobius = 1,
  kJordan = 2,
  kSmallestPrimeFactor = 3,
};

const char* to_string(SieveKind kind);

// Dense table of an arithmetic function on 1..limit. Immutable after
// construction; index 0 is unused.
class SieveTable {
 public:
  SieveKind kind() const { return kind_; }
  // Jordan order k; 0 for other kinds.
  unsigned order() const { return order_; }
  std::uint64_t limit() const { return limit_; }

  i128 operator[](std::uint64_t n) const { return values_[n]; }
  // values for n = 1..limit
  std::span<const i128> values() const {
    return std::span<const i128>(values_).subspan(1);
  }

  std::uint64_t memory_bytes() const { return values_.size() * sizeof(i128); }

 private:
  friend SieveTable sieve(SieveKind, std::uint64_t, unsigned, std::uint64_t);
  friend SieveTable load_sieve_cache(const std::filesystem::path&);

  SieveTable(SieveKind kind, unsigned order, std::uint64_t limit,
             std::vector<i128> values)
      : kind_(kind), order_(order), limit_(limit), values_(std::move(values)) {}

  SieveKind kind_;
  unsigned order_;
  std::uint64_t limit_;
  std::vector<i128> values_;
};

inline constexpr std::uint64_t kDefaultMemoryBudget = std::uint64_t{2} << 30;

// Bytes a table with this limit occupies.
std::uint64_t sieve_bytes(std::uint64_t limit);

// Linear sieve over 1..limit. `order` is the Jordan k (ignored for other
// kinds). Throws MemoryBudgetExceeded before allocating and OverflowError
// if a Jordan entry leaves 128 bits.
SieveTable sieve(SieveKind kind, std::uint64_t limit, unsigned order = 0,
                 std::uint64_t memory_budget = kDefaultMemoryBudget);

// Binary cache: 8-byte magic "CRSIEVE1", u32 kind, u32 k, u64 N, then N
// signed 64-bit entries for n = 1..N, all little-endian. Tables with entries
// outside int64 cannot be cached and throw OverflowError.
void save_sieve_cache(const SieveTable& table, const std::filesystem::path& path);
SieveTable load_sieve_cache(const std::filesystem::path& path);

}  // namespace cohen
