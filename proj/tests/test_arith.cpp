#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <random>

#include "cohen/arith.hpp"
#include "cohen/rational.hpp"

using namespace cohen;

namespace {

// Counts k-tuples mod n whose gcd together with n is 1.
std::uint64_t count_coprime_tuples(unsigned k, std::uint64_t n) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < k; ++i) total *= n;
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t g = n, rest = code;
    for (unsigned i = 0; i < k; ++i) {
      g = std::gcd(g, rest % n);
      rest /= n;
    }
    if (g == 1) ++count;
  }
  return count;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

std::uint64_t gcd_s_by_enumeration(std::uint64_t m, std::uint64_t n, unsigned s) {
  std::uint64_t best = 1;
  for (std::uint64_t l = 1; ipow(l, s) <= std::min(m, n); ++l) {
    const std::uint64_t ls = ipow(l, s);
    if (m % ls == 0 && n % ls == 0) best = ls;
  }
  return best;
}

std::uint64_t tau_s_by_enumeration(unsigned s, std::uint64_t n) {
  std::uint64_t count = 0;
  for (std::uint64_t l = 1; ipow(l, s) <= n; ++l) {
    if (n % ipow(l, s) == 0) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("mobius") {
  CHECK(mobius(factorize(1)) == 1);
  CHECK(mobius(factorize(6)) == 1);
  CHECK(mobius(factorize(12)) == 0);
  CHECK(mobius(factorize(30)) == -1);
}

TEST_CASE("jordan examples") {
  CHECK(jordan(1, factorize(6)) == 2);
  CHECK(count_coprime_tuples(2, 4) == 12);
  CHECK(jordan(2, factorize(4)) == 12);
  CHECK(jordan(5, factorize(1)) == 1);
  CHECK_THROWS_AS(jordan(0, factorize(3)), InvalidArgument);
}

TEST_CASE("jordan counts coprime tuples") {
  for (unsigned k = 1; k <= 3; ++k) {
    for (std::uint64_t n = 1; n <= 30; ++n) {
      REQUIRE_MESSAGE(jordan(k, factorize(n)) == count_coprime_tuples(k, n),
                      "k = " << k << ", n = " << n);
    }
  }
}

TEST_CASE("jordan reports overflow with the needed width") {
  const std::uint64_t n = 10'000'000'019ULL;  // n^4 ~ 2^133
  try {
    (void)jordan(4, factorize(n));
    FAIL("expected OverflowError");
  } catch (const OverflowError& e) {
    CHECK(e.required_bits() >= 128);
  }
  CHECK_NOTHROW(jordan(3, factorize(n)));
}

TEST_CASE("multiplicativity of jordan, mobius and tau_s") {
  std::mt19937_64 rng(2024);
  int checked = 0;
  while (checked < 20'000) {
    const std::uint64_t m = rng() % 10'000 + 1;
    const std::uint64_t n = rng() % 10'000 + 1;
    if (std::gcd(m, n) != 1) continue;
    ++checked;
    const auto fm = factorize(m), fn = factorize(n), fmn = factorize(m * n);
    REQUIRE(mobius(fmn) == mobius(fm) * mobius(fn));
    for (unsigned s = 1; s <= 4; ++s) REQUIRE(tau_s(s, fmn) == tau_s(s, fm) * tau_s(s, fn));
    for (unsigned k = 1; k <= 6; ++k) {
      const BigInt expected = to_bigint(jordan(k, fm)) * to_bigint(jordan(k, fn));
      if (expected > to_bigint(~u128{0})) {
        REQUIRE_THROWS_AS(jordan(k, fmn), OverflowError);
      } else {
        REQUIRE(to_bigint(jordan(k, fmn)) == expected);
      }
    }
  }
}

TEST_CASE("sum of J_k over divisors is n^k") {
  for (unsigned k = 1; k <= 4; ++k) {
    for (std::uint64_t n = 1; n <= 10'000; ++n) {
      u128 total = 0;
      for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        total += jordan(k, factorize(d));
        if (d * d != n) total += jordan(k, factorize(n / d));
      }
      REQUIRE_MESSAGE(total == static_cast<u128>(ipow(n, k)), "k = " << k << ", n = " << n);
    }
  }
}

TEST_CASE("generalized gcd") {
  CHECK(generalized_gcd(12, 18, 1) == 6);
  CHECK(gcd_s_by_enumeration(4, 8, 2) == 4);
  CHECK(generalized_gcd(4, 8, 2) == 4);
  CHECK(generalized_gcd(7, 9, 2) == 1);
  CHECK_THROWS_AS(generalized_gcd(0, 9, 2), InvalidArgument);
  CHECK_THROWS_AS(generalized_gcd(3, 9, 0), InvalidArgument);

  for (std::uint64_t m = 1; m <= 200; ++m) {
    for (std::uint64_t n = 1; n <= 200; ++n) {
      REQUIRE(generalized_gcd(m, n, 1) == std::gcd(m, n));
      for (unsigned s = 2; s <= 3; ++s) {
        const std::uint64_t g = generalized_gcd(m, n, s);
        REQUIRE(std::gcd(m, n) % g == 0);
        REQUIRE(g == gcd_s_by_enumeration(m, n, s));
      }
    }
  }
}

TEST_CASE("generalized gcd against a prefactored argument") {
  for (std::uint64_t r = 1; r <= 30; ++r) {
    for (unsigned s = 1; s <= 3; ++s) {
      const std::uint64_t rs = ipow(r, s);
      const auto frs = factorize(rs);
      for (std::uint64_t h = 1; h <= rs; ++h) {
        REQUIRE(generalized_gcd(h, frs.factors(), s) == generalized_gcd(h, rs, s));
      }
    }
  }
}

TEST_CASE("tau_s") {
  CHECK(tau_s(1, factorize(6)) == 4);
  CHECK(tau_s_by_enumeration(2, 36) == 4);
  CHECK(tau_s(2, factorize(36)) == 4);
  CHECK(tau_s(3, factorize(7)) == 1);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    for (unsigned s = 1; s <= 3; ++s) REQUIRE(tau_s(s, factorize(n)) == tau_s_by_enumeration(s, n));
  }
}

TEST_CASE("tau_s(n^s) = tau(n)") {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    const std::uint64_t tau = tau_s(1, factorize(n));
    for (unsigned s = 1; s <= 4; ++s) {
      REQUIRE_MESSAGE(tau_s(s, factorize(ipow(n, s))) == tau, "n = " << n << ", s = " << s);
    }
  }
}

TEST_CASE("divisor sigma") {
  CHECK(divisor_sigma(factorize(1)) == 1);
  CHECK(divisor_sigma(factorize(12)) == 28);
  CHECK(divisor_sigma(factorize(20)) == 42);
}

TEST_CASE("zeta") {
  CHECK(std::abs(zeta(2) - std::numbers::pi * std::numbers::pi / 6) < 1e-12);
  CHECK(std::abs(zeta(4) - std::pow(std::numbers::pi, 4) / 90) < 1e-12);
  CHECK(std::abs(zeta(6, 1e-14) - std::pow(std::numbers::pi, 6) / 945) < 1e-14);
  CHECK_THROWS_AS(zeta(1), InvalidArgument);
  CHECK_THROWS_AS(zeta(0), InvalidArgument);
  CHECK_THROWS_AS(zeta(3, 0.0), InvalidArgument);
}

TEST_CASE("zeta(10) against plain partial sums at two cutoffs") {
  auto partial = [](std::uint64_t cutoff) {
    long double sum = 0;
    for (std::uint64_t n = cutoff; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -10.0L);
    return static_cast<double>(sum);
  };
  const double at_m = partial(1000);
  const double at_2m = partial(2000);
  CHECK(std::abs(at_m - at_2m) < 1e-12);
  CHECK(std::abs(zeta(10) - at_2m) < 1e-12);
}

TEST_CASE("1/J_s(r) <= zeta(s)/r^s, compared exactly") {
  for (unsigned s = 2; s <= 3; ++s) {
    const BigRational zeta_upper =
        BigRational::from_double(zeta(s)) + BigRational::from_double(zeta_error_bound(s, 1e-12));
    for (std::uint64_t r = 1; r <= 10'000; ++r) {
      const BigRational lhs(to_bigint(static_cast<u128>(ipow(r, s))), BigInt(1));
      const BigRational rhs = BigRational(to_bigint(jordan(s, factorize(r))), BigInt(1)) * zeta_upper;
      REQUIRE_MESSAGE(lhs <= rhs, "r = " << r << ", s = " << s);
    }
  }
}

TEST_CASE("sieve examples") {
  const auto phi = sieve(SieveKind::kJordan, 10, 1);
  const std::vector<i128> expected_phi = {1, 1, 2, 2, 4, 2, 6, 4, 6, 4};
  CHECK(std::equal(phi.values().begin(), phi.values().end(), expected_phi.begin()));
  const auto mu = sieve(SieveKind::kMobius, 6);
  const std::vector<i128> expected_mu = {1, -1, -1, 0, -1, 1};
  CHECK(std::equal(mu.values().begin(), mu.values().end(), expected_mu.begin()));
  const auto one = sieve(SieveKind::kJordan, 1, 3);
  REQUIRE(one.values().size() == 1);
  CHECK(one[1] == 1);
  CHECK_THROWS_AS(sieve(SieveKind::kMobius, 0), InvalidArgument);
  CHECK_THROWS_AS(sieve(SieveKind::kJordan, 10, 0), InvalidArgument);
}

TEST_CASE("sieve tables match pointwise evaluation up to 10^4") {
  constexpr std::uint64_t kLimit = 10'000;
  const auto mu = sieve(SieveKind::kMobius, kLimit);
  const auto spf = sieve(SieveKind::kSmallestPrimeFactor, kLimit);
  std::vector<SieveTable> jordans;
  for (unsigned k = 1; k <= 4; ++k) jordans.push_back(sieve(SieveKind::kJordan, kLimit, k));
  for (std::uint64_t n = 1; n <= kLimit; ++n) {
    const auto fn = factorize(n);
    REQUIRE(mu[n] == mobius(fn));
    REQUIRE(spf[n] == static_cast<i128>(n == 1 ? 1 : fn.factors()[0].prime));
    for (unsigned k = 1; k <= 4; ++k) REQUIRE(jordans[k - 1][n] == static_cast<i128>(jordan(k, fn)));
  }
}

TEST_CASE("sieve errors") {
  CHECK_THROWS_AS(sieve(SieveKind::kJordan, 100, 40), OverflowError);
  try {
    (void)sieve(SieveKind::kMobius, 1'000'000, 0, 1000);
    FAIL("expected MemoryBudgetExceeded");
  } catch (const MemoryBudgetExceeded& e) {
    CHECK(e.requested() == sieve_bytes(1'000'000));
    CHECK(e.allowed() == 1000);
  }
}

TEST_CASE("sieve cache round trip and validation") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / "cohen_test_cache.bin";
  const auto table = sieve(SieveKind::kJordan, 5000, 2);
  save_sieve_cache(table, path);
  CHECK(std::filesystem::file_size(path) == 24 + 8 * 5000);
  const auto loaded = load_sieve_cache(path);
  CHECK(loaded.kind() == SieveKind::kJordan);
  CHECK(loaded.order() == 2);
  CHECK(loaded.limit() == 5000);
  CHECK(std::equal(loaded.values().begin(), loaded.values().end(), table.values().begin()));

  // Little-endian header: magic, kind = 2, k = 2, N = 5000.
  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> head(24);
  in.read(reinterpret_cast<char*>(head.data()), 24);
  CHECK(std::string(head.begin(), head.begin() + 8) == "CRSIEVE1");
  CHECK(head[8] == 2);
  CHECK(head[12] == 2);
  CHECK(head[16] == (5000 & 0xff));
  CHECK(head[17] == (5000 >> 8));
  in.close();

  std::filesystem::resize_file(path, 24 + 8 * 4000);
  CHECK_THROWS_AS(load_sieve_cache(path), InvalidArgument);
  {
    std::ofstream bad(path, std::ios::binary | std::ios::trunc);
    bad << "NOTACACHEFILE-----------";
  }
  CHECK_THROWS_AS(load_sieve_cache(path), InvalidArgument);

  // J_4(n) leaves int64 well before n = 10^5.
  CHECK_THROWS_AS(save_sieve_cache(sieve(SieveKind::kJordan, 100'000, 4), path), OverflowError);
  std::filesystem::remove(path);
}
