#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cohen/arith.hpp"

namespace cohen {

// Parameters of the shifted convolution
//   sum_{n <= N} J_a(n)/n^a * J_b(n+h)/(n+h)^b.
// The constructor enforces s > 1, a, b > 1 + s/2, h >= 1 and N >= 1.
class AsymptoticQuery {
 public:
  AsymptoticQuery(unsigned s, unsigned a, unsigned b, std::uint64_t h,
                  std::uint64_t limit, std::uint64_t prime_cutoff = 100'000);

  unsigned s() const { return s_; }
  unsigned a() const { return a_; }
  unsigned b() const { return b_; }
  std::uint64_t h() const { return h_; }
  std::uint64_t limit() const { return limit_; }
  std::uint64_t prime_cutoff() const { return prime_cutoff_; }

 private:
  unsigned s_, a_, b_;
  std::uint64_t h_, limit_, prime_cutoff_;
};

// Closed-form description of the truncated Euler product's local factors.
struct EulerProductSpec {
  std::uint64_t prime_cutoff;
  std::string dividing_factor;     // primes p | m
  std::string nondividing_factor;  // primes p not dividing m
};

EulerProductSpec euler_product_spec(const AsymptoticQuery& q);

// (1 - p^-(s+a))(1 - p^-(s+b)) + (p^s - 1) p^-(a+b+2s)
double dividing_factor(unsigned s, unsigned a, unsigned b, std::uint64_t p);
// (1 - p^-(s+a))(1 - p^-(s+b)) - p^-(a+b+2s)
double nondividing_factor(unsigned s, unsigned a, unsigned b, std::uint64_t p);
// (1 - p^-(s+a))(1 - p^-(s+b))(1 + c_p^s(m^s) / ((p^(s+a)-1)(p^(s+b)-1))),
// the form before the prime-power rule is applied.
double local_factor_via_cohen_sum(unsigned s, unsigned a, unsigned b,
                                  std::uint64_t p, std::uint64_t m);

struct RhsProduct {
  double value;
  // Bound on |product over all primes / truncated product - 1|.
  double tail_bound;
  std::uint64_t m;
  std::uint64_t k;
};

// Truncated product over primes p <= prime_cutoff. Throws InvalidArgument if
// the cutoff is below the largest prime factor of m.
RhsProduct rhs_product(const AsymptoticQuery& q);

struct LhsCheckpoint {
  std::uint64_t limit;
  double sum;
};

inline constexpr std::uint64_t kDecadeCheckpoints[] = {10'000, 100'000, 1'000'000};

// Sieved sweep over n <= N in fixed-size chunks, reduced in ascending chunk
// order with compensated summation. Checkpoints below N are kept; N is always
// the last one.
std::vector<LhsCheckpoint> lhs_sum(
    const AsymptoticQuery& q,
    std::span<const std::uint64_t> checkpoints = kDecadeCheckpoints,
    unsigned threads = 1, std::uint64_t memory_budget = kDefaultMemoryBudget);

using Coefficient = std::function<double(std::uint64_t)>;

// sum_{r <= R} fhat(r) ghat(r) c_r^s(h)
double general_main_term(const Coefficient& fhat, const Coefficient& ghat,
                         unsigned s, std::uint64_t h, std::uint64_t cutoff);

// r -> mu(r) / (J_{s+a}(r) zeta(s+a)), the expansion coefficients of
// J_a(n)/n^a against c_r^s(n^s).
Coefficient jordan_coefficient(unsigned s, unsigned a);

struct RatioPoint {
  std::uint64_t limit;
  double ratio;  // lhs / (limit * rhs)
};

struct AsymptoticReport {
  unsigned s, a, b;
  std::uint64_t h;
  std::uint64_t m, k;
  EulerProductSpec product;
  std::vector<LhsCheckpoint> lhs_checkpoints;
  RhsProduct rhs;
  std::vector<RatioPoint> ratios;
  double tolerance;
  bool converged;
};

// converged: |ratio - 1| < tolerance at the last checkpoint and |ratio - 1|
// did not grow between the last two checkpoints.
AsymptoticReport asymptotic_verify(
    const AsymptoticQuery& q, double tolerance,
    std::span<const std::uint64_t> checkpoints = kDecadeCheckpoints,
    unsigned threads = 1, std::uint64_t memory_budget = kDefaultMemoryBudget);

}  // namespace cohen
