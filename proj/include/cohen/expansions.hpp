#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cohen/rational.hpp"

namespace cohen {

struct ExpansionQuery {
  unsigned s;
  unsigned k;
  std::uint64_t n;
  std::uint64_t cutoff;  // Q: the series runs over q <= cutoff
};

struct Checkpoint {
  std::uint64_t cutoff;
  double partial_sum;
  double abs_error;
};

// Truncated series sum_{q <= Q} mu(q) c_q^s(n^s) / J_{s+k}(q) against the
// closed form zeta(s+k) J_k(n) / n^k.
struct ExpansionReport {
  unsigned s = 0;
  unsigned k = 0;
  std::uint64_t n = 0;
  double target = 0.0;
  std::vector<Checkpoint> checkpoints;  // increasing cutoff
  double final_abs_error = 0.0;
  double tolerance = 0.0;
  bool converged = false;
};

inline constexpr double kZetaPrecision = 1e-12;

// Default checkpoint cutoffs; the final cutoff Q is always appended.
inline constexpr std::uint64_t kDefaultCheckpoints[] = {10, 100, 1000};

// Acceptance envelope: max(10^-3, 2 sigma(n)^s Q^(1-s-k)).
double expansion_tolerance(unsigned s, unsigned k, std::uint64_t n,
                           std::uint64_t cutoff);

// Terms with non-squarefree q are zero and skipped. Terms are evaluated in
// parallel over `threads` workers; the reduction is sequential and
// compensated, so the report does not depend on the thread count.
ExpansionReport expansion_partial_sum(
    const ExpansionQuery& q,
    std::span<const std::uint64_t> checkpoints = kDefaultCheckpoints,
    unsigned threads = 1);

struct LocalFactorPair {
  BigRational lhs;  // sum over squarefree q built from P
  BigRational rhs;  // product over p in P of the local factors
};

// Exact finite Euler-factorization skeleton for the primes in `primes`.
// Throws InvalidArgument if an element is not prime or is repeated.
LocalFactorPair local_factor_exact(unsigned s, unsigned k, std::uint64_t n,
                                   std::span<const std::uint64_t> primes);

// 1 + mu(p) c_p^s(n^s) / J_{s+k}(p) through the closed-form split on p | n.
BigRational local_factor_cases(unsigned s, unsigned k, std::uint64_t p,
                               std::uint64_t n);

// The same local factor computed generically from crs_fast and jordan.
BigRational local_factor_generic(unsigned s, unsigned k, std::uint64_t p,
                                 std::uint64_t n);

// sum_{r <= R} mu(r) c^s(n, r) / J_{s+k}(r) with the k-vector sum evaluated
// by enumeration. Evidence only: converged means within 10% of the target.
ExpansionReport sivaramakrishnan_check(unsigned s, unsigned k, std::uint64_t n,
                                       std::uint64_t cutoff);

}  // namespace cohen
