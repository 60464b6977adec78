#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cohen {

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A positive integer together with its prime factorization. Factors are kept
// sorted by strictly increasing prime; the value 1 has no factors.
class FactoredInteger {
 public:
  FactoredInteger() = default;

  // Validates that the factors are sorted, prime-ascending, with positive
  // exponents, and that their product equals `value`.
  FactoredInteger(std::uint64_t value, std::vector<PrimePower> factors);

  std::uint64_t value() const { return value_; }
  std::span<const PrimePower> factors() const& { return factors_; }
  std::span<const PrimePower> factors() const&& = delete;
  bool is_one() const { return factors_.empty(); }
  bool is_squarefree() const;
  std::uint64_t largest_prime() const;

  std::string to_string() const;

  friend bool operator==(const FactoredInteger&,
                         const FactoredInteger&) = default;

 private:
  std::uint64_t value_ = 1;
  std::vector<PrimePower> factors_;
};

// Largest input accepted by factorize (exclusive).
inline constexpr std::uint64_t kFactorLimit = std::uint64_t{1} << 63;

// Deterministic Miller-Rabin; exact for all 64-bit inputs.
bool is_prime(std::uint64_t n);

// Trial division by the primes below 10^6, then Miller-Rabin and Brent's
// variant of Pollard rho on whatever cofactor survives. Deterministic.
// Throws InvalidArgument for n = 0 or n >= 2^63.
FactoredInteger factorize(std::uint64_t n);

// Primes p <= limit, ascending (simple Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

}  // namespace cohen
