#include "cohen/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "cohen/cohen_sums.hpp"
#include "cohen/parallel.hpp"
#include "cohen/summation.hpp"

namespace cohen {

namespace {

double inv_power(std::uint64_t p, unsigned e) {
  return std::pow(static_cast<double>(p), -static_cast<double>(e));
}

// Product prefactor minus one, (1-x)(1-y) - 1 = -x - y + xy.
double base_offset(unsigned s, unsigned a, unsigned b, std::uint64_t p) {
  const double x = inv_power(p, s + a);
  const double y = inv_power(p, s + b);
  return -x - y + x * y;
}

SPowerSplit split_shift(const AsymptoticQuery& q) {
  return split_s_power(factorize(q.h()), q.s());
}

constexpr std::uint64_t kChunk = 1 << 16;

}  // namespace

AsymptoticQuery::AsymptoticQuery(unsigned s, unsigned a, unsigned b,
                                 std::uint64_t h, std::uint64_t limit,
                                 std::uint64_t prime_cutoff)
    : s_(s), a_(a), b_(b), h_(h), limit_(limit), prime_cutoff_(prime_cutoff) {
  if (s <= 1) throw InvalidArgument("asymptotic: s must be > 1");
  // a, b > 1 + s/2, compared in integers
  if (2 * a <= 2 + s || 2 * b <= 2 + s) {
    throw InvalidArgument("asymptotic: a and b must exceed 1 + s/2");
  }
  if (h == 0) throw InvalidArgument("asymptotic: h must be >= 1");
  if (limit == 0) throw InvalidArgument("asymptotic: N must be >= 1");
}

EulerProductSpec euler_product_spec(const AsymptoticQuery& q) {
  return {q.prime_cutoff(),
          "(1-p^-(s+a))(1-p^-(s+b)) + (p^s-1)/p^(a+b+2s)",
          "(1-p^-(s+a))(1-p^-(s+b)) - 1/p^(a+b+2s)"};
}

double dividing_factor(unsigned s, unsigned a, unsigned b, std::uint64_t p) {
  const double ps = std::pow(static_cast<double>(p), s);
  return 1.0 + base_offset(s, a, b, p) + (ps - 1.0) * inv_power(p, a + b + 2 * s);
}

double nondividing_factor(unsigned s, unsigned a, unsigned b, std::uint64_t p) {
  return 1.0 + base_offset(s, a, b, p) - inv_power(p, a + b + 2 * s);
}

double local_factor_via_cohen_sum(unsigned s, unsigned a, unsigned b,
                                  std::uint64_t p, std::uint64_t m) {
  auto ms = checked_pow(m, s);
  if (!ms || *ms >= kFactorLimit) {
    throw OverflowError("local factor: m^s overflows", bits_for_power(m, s));
  }
  const double c = static_cast<double>(
      crs_fast({p, s, static_cast<std::uint64_t>(*ms)}).value);
  const double ja = std::pow(static_cast<double>(p), s + a) - 1.0;
  const double jb = std::pow(static_cast<double>(p), s + b) - 1.0;
  return (1.0 - inv_power(p, s + a)) * (1.0 - inv_power(p, s + b)) *
         (1.0 + c / (ja * jb));
}

RhsProduct rhs_product(const AsymptoticQuery& q) {
  const SPowerSplit split = split_shift(q);
  const FactoredInteger fm = factorize(split.m);
  if (fm.largest_prime() > q.prime_cutoff() && !fm.is_one()) {
    throw InvalidArgument("rhs_product: prime cutoff " +
                          std::to_string(q.prime_cutoff()) +
                          " is below the largest prime of m = " +
                          std::to_string(split.m));
  }
  std::set<std::uint64_t> dividing;
  for (const auto& pp : fm.factors()) dividing.insert(pp.prime);

  // Sum of logs keeps 10^4+ factors near 1 from drifting.
  CompensatedSum log_sum;
  for (std::uint64_t p : primes_up_to(q.prime_cutoff())) {
    const double offset =
        base_offset(q.s(), q.a(), q.b(), p) +
        (dividing.contains(p)
             ? (std::pow(static_cast<double>(p), q.s()) - 1.0) *
                   inv_power(p, q.a() + q.b() + 2 * q.s())
             : -inv_power(p, q.a() + q.b() + 2 * q.s()));
    log_sum += std::log1p(offset);
  }

  // Each omitted factor is 1 + u with |u| <= 4 p^-t, t = s + min(a, b), and
  // |log(1 + u)| <= 2|u| there. Sum over n > P of n^-t by integral comparison.
  const double t = q.s() + std::min(q.a(), q.b());
  const double start = static_cast<double>(std::max<std::uint64_t>(q.prime_cutoff(), 1) + 1);
  const double tail_sum = std::pow(start, -t) + std::pow(start, 1.0 - t) / (t - 1.0);
  return {std::exp(log_sum.value()), std::expm1(8.0 * tail_sum), split.m, split.k};
}

std::vector<LhsCheckpoint> lhs_sum(const AsymptoticQuery& q,
                                   std::span<const std::uint64_t> checkpoints,
                                   unsigned threads, std::uint64_t memory_budget) {
  const std::uint64_t n_max = q.limit();
  const std::uint64_t top = n_max + q.h();
  const bool shared = q.a() == q.b();
  const std::uint64_t requested = sieve_bytes(top) + (shared ? 0 : sieve_bytes(n_max));
  if (requested > memory_budget) throw MemoryBudgetExceeded(requested, memory_budget);

  const SieveTable jb = sieve(SieveKind::kJordan, top, q.b(), memory_budget);
  std::optional<SieveTable> ja_own;
  if (!shared) ja_own.emplace(sieve(SieveKind::kJordan, n_max, q.a(), memory_budget));
  const SieveTable& ja = shared ? jb : *ja_own;

  std::set<std::uint64_t> marks;
  for (std::uint64_t c : checkpoints) {
    if (c >= 1 && c < n_max) marks.insert(c);
  }
  marks.insert(n_max);

  // Chunks never straddle a checkpoint.
  struct Range {
    std::uint64_t begin, end;  // inclusive begin, exclusive end
  };
  std::vector<Range> ranges;
  std::uint64_t begin = 1;
  for (std::uint64_t mark : marks) {
    for (; begin <= mark; begin = std::min(mark + 1, begin + kChunk)) {
      ranges.push_back({begin, std::min(mark + 1, begin + kChunk)});
    }
  }

  const double pa = q.a();
  const double pb = q.b();
  std::vector<double> partial(ranges.size());
  run_tasks(ranges.size(), threads, [&](std::size_t i) {
    CompensatedSum sum;
    for (std::uint64_t n = ranges[i].begin; n < ranges[i].end; ++n) {
      const auto nf = static_cast<long double>(n);
      const auto shifted = static_cast<long double>(n + q.h());
      const long double f = static_cast<long double>(ja[n]) / std::pow(nf, pa);
      const long double g = static_cast<long double>(jb[n + q.h()]) / std::pow(shifted, pb);
      sum += static_cast<double>(f * g);
    }
    partial[i] = sum.value();
  });

  std::vector<LhsCheckpoint> out;
  CompensatedSum total;
  for (std::size_t i = 0; i < ranges.size(); ++i) {
    total += partial[i];
    const std::uint64_t last = ranges[i].end - 1;
    if (marks.contains(last)) out.push_back({last, total.value()});
  }
  return out;
}

double general_main_term(const Coefficient& fhat, const Coefficient& ghat,
                         unsigned s, std::uint64_t h, std::uint64_t cutoff) {
  if (s == 0) throw InvalidArgument("general_main_term: s must be >= 1");
  if (h == 0) throw InvalidArgument("general_main_term: h must be >= 1");
  CompensatedSum sum;
  for (std::uint64_t r = 1; r <= cutoff; ++r) {
    const double weight = fhat(r) * ghat(r);
    if (weight == 0.0) continue;
    sum += weight * static_cast<double>(crs_fast({r, s, h}).value);
  }
  return sum.value();
}

Coefficient jordan_coefficient(unsigned s, unsigned a) {
  const double z = zeta(s + a);
  return [s, a, z](std::uint64_t r) {
    const FactoredInteger fr = factorize(r);
    const int mu = mobius(fr);
    if (mu == 0) return 0.0;
    return static_cast<double>(mu / (static_cast<long double>(jordan(s + a, fr)) * z));
  };
}

AsymptoticReport asymptotic_verify(const AsymptoticQuery& q, double tolerance,
                                   std::span<const std::uint64_t> checkpoints,
                                   unsigned threads, std::uint64_t memory_budget) {
  if (!(tolerance > 0.0)) throw InvalidArgument("asymptotic: tolerance must be > 0");
  AsymptoticReport report{};
  report.s = q.s();
  report.a = q.a();
  report.b = q.b();
  report.h = q.h();
  report.product = euler_product_spec(q);
  report.rhs = rhs_product(q);
  report.m = report.rhs.m;
  report.k = report.rhs.k;

  auto ms = checked_pow(report.m, q.s());
  for (std::uint64_t r = 1; r <= 100; ++r) {
    if (crs_fast({r, q.s(), q.h()}).value !=
        crs_fast({r, q.s(), static_cast<std::uint64_t>(*ms)}).value) {
      throw InternalError("asymptotic: c_r^s(h) != c_r^s(m^s) at r = " +
                          std::to_string(r));
    }
  }

  report.lhs_checkpoints = lhs_sum(q, checkpoints, threads, memory_budget);
  for (const auto& [limit, sum] : report.lhs_checkpoints) {
    report.ratios.push_back({limit, sum / (static_cast<double>(limit) * report.rhs.value)});
  }
  report.tolerance = tolerance;
  const double last = std::abs(report.ratios.back().ratio - 1.0);
  bool settling = true;
  if (report.ratios.size() >= 2) {
    settling = last <= std::abs(report.ratios[report.ratios.size() - 2].ratio - 1.0);
  }
  report.converged = last < tolerance && settling;
  return report;
}

}  // namespace cohen
