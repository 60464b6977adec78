#include "cohen/cohen_sums.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "cohen/arith.hpp"
#include "cohen/summation.hpp"

namespace cohen {

namespace {

void validate(const CohenSumQuery& q) {
  if (q.r == 0) throw InvalidArgument("cohen sum: r must be >= 1");
  if (q.s == 0) throw InvalidArgument("cohen sum: s must be >= 1");
}

// p-adic valuation; n = 0 is divisible by every power.
unsigned valuation(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return std::numeric_limits<unsigned>::max();
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

u128 checked_power(std::uint64_t p, std::uint64_t exp, const char* what) {
  if (exp > 256) throw OverflowError(what, bits_for_power(p, 256));
  auto v = checked_pow(p, static_cast<unsigned>(exp));
  if (!v || *v > static_cast<u128>(std::numeric_limits<i128>::max())) {
    throw OverflowError(what, bits_for_power(p, static_cast<unsigned>(exp)));
  }
  return *v;
}

// Rounds an accumulated exponential sum, asserting it lands on an integer.
i128 round_exact(double re, double im, const char* who) {
  const double nearest = std::round(re);
  if (std::abs(im) >= kRoundingTolerance ||
      std::abs(re - nearest) >= kRoundingTolerance) {
    throw InternalError(std::string(who) + ": exponential sum (" +
                        std::to_string(re) + ", " + std::to_string(im) +
                        ") is not an integer");
  }
  return static_cast<i128>(nearest);
}

// e(residue / modulus) summed with integer reduction of the phase.
struct PhaseAccumulator {
  std::uint64_t modulus;
  CompensatedSum re, im;

  void add(std::uint64_t residue, double weight = 1.0) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(residue) /
                         static_cast<double>(modulus);
    re += weight * std::cos(angle);
    im += weight * std::sin(angle);
  }
};

}  // namespace

const char* to_string(Evaluator e) {
  switch (e) {
    case Evaluator::kDirect:
      return "direct";
    case Evaluator::kDivisorSum:
      return "divisor-sum";
    case Evaluator::kMultiplicative:
      return "multiplicative";
  }
  return "unknown";
}

CohenSumValue crs_direct(const CohenSumQuery& q) {
  validate(q);
  auto modulus = checked_pow(q.r, q.s);
  if (!modulus || *modulus > kBruteForceGuard) {
    throw GuardExceeded("crs_direct: r^s exceeds the 10^7 term guard");
  }
  const auto rs = static_cast<std::uint64_t>(*modulus);

  // Factor r^s from r so the generalized gcd only scans primes of r.
  const FactoredInteger fr = factorize(q.r);
  std::vector<PrimePower> rs_factors;
  for (const auto& [p, e] : fr.factors()) {
    rs_factors.push_back({p, e * q.s});
  }

  const std::uint64_t n_mod = q.n % rs;
  PhaseAccumulator acc{rs, {}, {}};
  for (std::uint64_t h = 1; h <= rs; ++h) {
    if (generalized_gcd(h, rs_factors, q.s) != 1) continue;
    acc.add(static_cast<std::uint64_t>(static_cast<u128>(n_mod) * h % rs));
  }
  return {round_exact(acc.re.value(), acc.im.value(), "crs_direct"),
          Evaluator::kDirect};
}

CohenSumValue crs_divisor_sum(const CohenSumQuery& q) {
  validate(q);
  const FactoredInteger r = factorize(q.r);
  const auto factors = r.factors();

  // Walk the divisors d = prod p^j; mu(r/d) vanishes unless j >= e - 1.
  i128 total = 0;
  std::vector<unsigned> exps(factors.size(), 0);
  while (true) {
    int mu = 1;
    bool live = true;
    u128 d = 1;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const unsigned gap = factors[i].exponent - exps[i];
      if (gap >= 2) live = false;
      if (gap == 1) mu = -mu;
      for (unsigned j = 0; j < exps[i]; ++j) d *= factors[i].prime;
    }
    if (live) {
      auto ds = checked_pow(d, q.s);
      const bool fits = ds && *ds <= static_cast<u128>(std::numeric_limits<i128>::max());
      if (!fits) {
        if (q.n == 0) {
          throw OverflowError("crs_divisor_sum: d^s overflows",
                              bits_for_power(static_cast<std::uint64_t>(d), q.s));
        }
        // d^s > n >= 1, so d^s cannot divide n.
      } else if (q.n == 0 || (*ds <= q.n && q.n % static_cast<std::uint64_t>(*ds) == 0)) {
        total += mu * static_cast<i128>(*ds);
      }
    }
    std::size_t i = 0;
    while (i < factors.size() && exps[i] == factors[i].exponent) exps[i++] = 0;
    if (i == factors.size()) break;
    ++exps[i];
  }
  return {total, Evaluator::kDivisorSum};
}

CohenSumValue crs_fast(const CohenSumQuery& q) {
  validate(q);
  const FactoredInteger fr = factorize(q.r);
  i128 result = 1;
  for (const auto& [p, e] : fr.factors()) {
    const std::uint64_t top = static_cast<std::uint64_t>(q.s) * e;
    const std::uint64_t below = top - q.s;
    const unsigned v = valuation(q.n, p);
    i128 local;
    if (v >= top) {
      const u128 hi = checked_power(p, top, "crs_fast: p^(se) overflows");
      const u128 lo = checked_power(p, below, "crs_fast: p^(s(e-1)) overflows");
      local = static_cast<i128>(hi - lo);
    } else if (v >= below) {
      local = -static_cast<i128>(checked_power(p, below, "crs_fast: p^(s(e-1)) overflows"));
    } else {
      return {0, Evaluator::kMultiplicative};
    }
    i128 next;
    if (__builtin_mul_overflow(result, local, &next)) {
      throw OverflowError("crs_fast: c_r^s(n) overflows",
                          bits_for_power(q.r, q.s));
    }
    result = next;
  }
  return {result, Evaluator::kMultiplicative};
}

SPowerSplit split_s_power(const FactoredInteger& h, unsigned s) {
  if (s == 0) throw InvalidArgument("split_s_power: s must be >= 1");
  SPowerSplit out{1, 1};
  for (const auto& [p, e] : h.factors()) {
    for (unsigned i = 0; i < e / s; ++i) out.m *= p;
    for (unsigned i = 0; i < e % s; ++i) out.k *= p;
  }
  return out;
}

CohenSumValue crs_of_shift(std::uint64_t r, unsigned s, std::uint64_t h) {
  if (h == 0) throw InvalidArgument("crs_of_shift: h must be >= 1");
  const SPowerSplit split = split_s_power(factorize(h), s);
  // m^s divides h, so it fits.
  auto ms = checked_pow(split.m, s);
  return crs_fast({r, s, static_cast<std::uint64_t>(*ms)});
}

i128 kvector_sum(unsigned k, std::int64_t n, std::uint64_t r) {
  if (k == 0) throw InvalidArgument("kvector_sum: k must be >= 1");
  if (r == 0) throw InvalidArgument("kvector_sum: r must be >= 1");
  auto terms = checked_pow(r, k);
  if (!terms || *terms > kBruteForceGuard) {
    throw GuardExceeded("kvector_sum: r^k exceeds the 10^7 term guard");
  }

  // Count admissible tuples by the residue of their coordinate sum, then
  // weight each residue class by its exponential.
  std::vector<std::uint64_t> by_residue(r, 0);
  std::vector<std::uint64_t> tuple(k, 0);
  std::vector<std::uint64_t> gcd_prefix(k + 1, r);
  std::vector<std::uint64_t> sum_prefix(k + 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    gcd_prefix[i + 1] = std::gcd(gcd_prefix[i], tuple[i]);
    sum_prefix[i + 1] = (sum_prefix[i] + tuple[i]) % r;
  }
  while (true) {
    if (gcd_prefix[k] == 1) ++by_residue[sum_prefix[k]];
    // Odometer increment; refresh prefixes from the changed position.
    unsigned i = k;
    while (i > 0 && tuple[i - 1] + 1 == r) tuple[--i] = 0;
    if (i == 0) break;
    ++tuple[i - 1];
    for (unsigned j = i - 1; j < k; ++j) {
      gcd_prefix[j + 1] = std::gcd(gcd_prefix[j], tuple[j]);
      sum_prefix[j + 1] = (sum_prefix[j] + tuple[j]) % r;
    }
  }

  const auto rr = static_cast<std::int64_t>(r);
  const auto n_mod = static_cast<std::uint64_t>(((n % rr) + rr) % rr);
  PhaseAccumulator acc{r, {}, {}};
  for (std::uint64_t t = 0; t < r; ++t) {
    if (by_residue[t] == 0) continue;
    acc.add(static_cast<std::uint64_t>(static_cast<u128>(n_mod) * t % r),
            static_cast<double>(by_residue[t]));
  }
  return round_exact(acc.re.value(), acc.im.value(), "kvector_sum");
}

}  // namespace cohen
