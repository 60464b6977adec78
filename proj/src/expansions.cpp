#include "cohen/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cohen/arith.hpp"
#include "cohen/cohen_sums.hpp"
#include "cohen/parallel.hpp"
#include "cohen/summation.hpp"

namespace cohen {

namespace {

void validate(unsigned s, unsigned k, std::uint64_t n) {
  if (s == 0 || k == 0) throw InvalidArgument("expansion: s, k must be >= 1");
  if (n == 0) throw InvalidArgument("expansion: n must be >= 1");
}

std::uint64_t power_argument(std::uint64_t n, unsigned s) {
  auto ns = checked_pow(n, s);
  if (!ns || *ns >= (u128{1} << 63)) {
    throw OverflowError("expansion: n^s must be < 2^63", bits_for_power(n, s));
  }
  return static_cast<std::uint64_t>(*ns);
}

// zeta(s+k) J_k(n) / n^k
double closed_form(unsigned s, unsigned k, std::uint64_t n) {
  const u128 j = jordan(k, factorize(n));
  auto nk = checked_pow(n, k);
  if (!nk) throw OverflowError("expansion: n^k overflows", bits_for_power(n, k));
  const long double ratio = static_cast<long double>(j) / static_cast<long double>(*nk);
  return static_cast<double>(ratio) * zeta(s + k, kZetaPrecision);
}

std::vector<std::uint64_t> schedule(std::span<const std::uint64_t> requested,
                                    std::uint64_t last) {
  std::set<std::uint64_t> points;
  for (std::uint64_t c : requested) {
    if (c >= 1 && c < last) points.insert(c);
  }
  points.insert(last);
  return {points.begin(), points.end()};
}

// Sequential compensated prefix sums, sampled at the checkpoint cutoffs.
// terms[i] is the term for index i + 1.
void fill_checkpoints(ExpansionReport& report, std::span<const double> terms,
                      std::span<const std::uint64_t> cutoffs) {
  CompensatedSum sum;
  std::size_t next = 0;
  for (std::size_t i = 0; i < terms.size() && next < cutoffs.size(); ++i) {
    sum += terms[i];
    if (i + 1 == cutoffs[next]) {
      const double value = sum.value();
      report.checkpoints.push_back({cutoffs[next], value, std::abs(value - report.target)});
      ++next;
    }
  }
  report.final_abs_error = report.checkpoints.back().abs_error;
}

void check_prime_set(std::span<const std::uint64_t> primes) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t p : primes) {
    if (!is_prime(p)) throw InvalidArgument("local factor: " + std::to_string(p) + " is not prime");
    if (!seen.insert(p).second) {
      throw InvalidArgument("local factor: prime " + std::to_string(p) + " repeated");
    }
  }
}

BigRational term(unsigned s, unsigned k, std::uint64_t q, std::uint64_t ns) {
  const FactoredInteger fq = factorize(q);
  const int mu = mobius(fq);
  if (mu == 0) return BigRational(0);
  const i128 c = crs_fast({q, s, ns}).value;
  return BigRational(to_bigint(static_cast<i128>(mu) * c), to_bigint(jordan(s + k, fq)));
}

}  // namespace

double expansion_tolerance(unsigned s, unsigned k, std::uint64_t n,
                           std::uint64_t cutoff) {
  const double sigma = static_cast<double>(divisor_sigma(factorize(n)));
  const double envelope = 2.0 * std::pow(sigma, s) *
                          std::pow(static_cast<double>(cutoff), 1.0 - s - k);
  return std::max(1e-3, envelope);
}

ExpansionReport expansion_partial_sum(const ExpansionQuery& q,
                                      std::span<const std::uint64_t> checkpoints,
                                      unsigned threads) {
  validate(q.s, q.k, q.n);
  if (q.cutoff == 0) throw InvalidArgument("expansion: Q must be >= 1");
  const std::uint64_t ns = power_argument(q.n, q.s);

  ExpansionReport report;
  report.s = q.s;
  report.k = q.k;
  report.n = q.n;
  report.target = closed_form(q.s, q.k, q.n);

  std::vector<double> terms(q.cutoff, 0.0);
  auto work = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const std::uint64_t index = idx + 1;
      const FactoredInteger fq = factorize(index);
      const int mu = mobius(fq);
      if (mu == 0) continue;
      const i128 c = crs_fast({index, q.s, ns}).value;
      const u128 j = jordan(q.s + q.k, fq);
      terms[idx] = static_cast<double>(static_cast<long double>(mu * c) /
                                       static_cast<long double>(j));
    }
  };
  constexpr std::uint64_t kChunk = 1 << 14;
  run_tasks((q.cutoff + kChunk - 1) / kChunk, threads, [&](std::size_t i) {
    work(i * kChunk, std::min<std::uint64_t>(q.cutoff, (i + 1) * kChunk));
  });

  fill_checkpoints(report, terms, schedule(checkpoints, q.cutoff));
  report.tolerance = expansion_tolerance(q.s, q.k, q.n, q.cutoff);
  report.converged = report.final_abs_error < report.tolerance;
  return report;
}

LocalFactorPair local_factor_exact(unsigned s, unsigned k, std::uint64_t n,
                                   std::span<const std::uint64_t> primes) {
  validate(s, k, n);
  check_prime_set(primes);
  if (primes.size() > 24) throw GuardExceeded("local_factor_exact: at most 24 primes");
  const std::uint64_t ns = power_argument(n, s);

  LocalFactorPair out{BigRational(0), BigRational(1)};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << primes.size()); ++mask) {
    u128 q = 1;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (mask >> i & 1) q *= primes[i];
      if (q >= kFactorLimit) throw OverflowError("local_factor_exact: q >= 2^63", 63);
    }
    out.lhs += term(s, k, static_cast<std::uint64_t>(q), ns);
  }
  for (std::uint64_t p : primes) out.rhs *= local_factor_generic(s, k, p, n);
  return out;
}

BigRational local_factor_generic(unsigned s, unsigned k, std::uint64_t p,
                                 std::uint64_t n) {
  validate(s, k, n);
  if (!is_prime(p)) throw InvalidArgument("local factor: " + std::to_string(p) + " is not prime");
  return BigRational(1) + term(s, k, p, power_argument(n, s));
}

BigRational local_factor_cases(unsigned s, unsigned k, std::uint64_t p,
                               std::uint64_t n) {
  validate(s, k, n);
  if (!is_prime(p)) throw InvalidArgument("local factor: " + std::to_string(p) + " is not prime");
  const BigInt ps = boost::multiprecision::pow(BigInt(p), s);
  const BigInt psk_minus_one = boost::multiprecision::pow(BigInt(p), s + k) - 1;
  if (n % p == 0) return BigRational(1) - BigRational(ps - 1, psk_minus_one);
  return BigRational(1) + BigRational(1, psk_minus_one);
}

ExpansionReport sivaramakrishnan_check(unsigned s, unsigned k, std::uint64_t n,
                                       std::uint64_t cutoff) {
  validate(s, k, n);
  if (cutoff == 0) throw InvalidArgument("sivaramakrishnan: R must be >= 1");
  auto largest = checked_pow(cutoff, s);
  if (!largest || *largest > kBruteForceGuard) {
    throw GuardExceeded("sivaramakrishnan: R^s exceeds the 10^7 term guard");
  }
  if (n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    throw InvalidArgument("sivaramakrishnan: n must fit a signed 64-bit integer");
  }

  ExpansionReport report;
  report.s = s;
  report.k = k;
  report.n = n;
  report.target = closed_form(s, k, n);

  std::vector<double> terms(cutoff, 0.0);
  for (std::uint64_t r = 1; r <= cutoff; ++r) {
    const FactoredInteger fr = factorize(r);
    const int mu = mobius(fr);
    if (mu == 0) continue;
    const i128 c = kvector_sum(s, static_cast<std::int64_t>(n), r);
    terms[r - 1] = static_cast<double>(static_cast<long double>(mu * c) /
                                       static_cast<long double>(jordan(s + k, fr)));
  }
  fill_checkpoints(report, terms, schedule(kDefaultCheckpoints, cutoff));
  report.tolerance = 0.1 * report.target;
  report.converged = report.final_abs_error < report.tolerance;
  return report;
}

}  // namespace cohen
