#include <doctest.h>

#include <random>

#include "cohen/factor.hpp"
#include "cohen/types.hpp"

using namespace cohen;

namespace {

// Lucas-Lehmer: 2^p - 1 is prime iff s_{p-2} = 0, s_0 = 4, s_{i+1} = s_i^2 - 2.
bool lucas_lehmer(unsigned p) {
  const u128 m = (u128{1} << p) - 1;
  u128 s = 4;
  for (unsigned i = 0; i + 2 < p; ++i) {
    // s < 2^61, so split the square to stay within 128 bits.
    const u128 hi = s >> 32, lo = s & 0xffffffffu;
    u128 sq = (hi * hi % m) * ((u128{1} << 64) % m) % m;
    sq = (sq + (2 * hi * lo % m) * (u128{1} << 32)) % m;
    sq = (sq + lo * lo) % m;
    s = (sq + m - 2) % m;
  }
  return s == 0;
}

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("factorize small values") {
  const auto one = factorize(1);
  CHECK(one.factors().empty());
  CHECK(factorize(1).is_one());
  const auto twelve = factorize(12);
  REQUIRE(twelve.factors().size() == 2);
  CHECK(twelve.factors()[0] == PrimePower{2, 2});
  CHECK(twelve.factors()[1] == PrimePower{3, 1});
  CHECK(twelve.to_string() == "2^2 * 3");
}

TEST_CASE("Mersenne prime 2^61 - 1") {
  const std::uint64_t m61 = (std::uint64_t{1} << 61) - 1;
  REQUIRE(lucas_lehmer(61));
  CHECK_FALSE(lucas_lehmer(11));  // 2047 = 23 * 89
  const auto f = factorize(m61);
  REQUIRE(f.factors().size() == 1);
  CHECK(f.factors()[0] == PrimePower{m61, 1});
  CHECK(is_prime(m61));
}

TEST_CASE("factorize rejects out-of-range inputs") {
  CHECK_THROWS_AS(factorize(0), InvalidArgument);
  CHECK_THROWS_AS(factorize(std::uint64_t{1} << 63), InvalidArgument);
  CHECK_NOTHROW(factorize((std::uint64_t{1} << 63) - 1));
}

TEST_CASE("is_prime agrees with trial division below 10^5") {
  for (std::uint64_t n = 0; n < 100'000; ++n) {
    REQUIRE_MESSAGE(is_prime(n) == trial_prime(n), "n = " << n);
  }
}

TEST_CASE("factorizations multiply back and use primes") {
  std::mt19937_64 rng(12345);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t n = rng() % (std::uint64_t{1} << 63 - 1) + 1;
    const auto f = factorize(n);
    u128 product = 1;
    std::uint64_t previous = 0;
    for (const auto& [p, e] : f.factors()) {
      REQUIRE(p > previous);
      REQUIRE(e >= 1);
      REQUIRE(is_prime(p));
      previous = p;
      for (unsigned j = 0; j < e; ++j) product *= p;
    }
    REQUIRE(product == n);
  }
}

TEST_CASE("semiprimes with two large factors go through Pollard rho") {
  const std::vector<std::pair<std::uint64_t, std::uint64_t>> cases = {
      {1'000'000'007, 998'244'353},
      {4'294'967'291, 2'147'483'647},
      {1'000'003, 1'000'033},
  };
  for (const auto& [p, q] : cases) {
    const auto f = factorize(p * q);
    REQUIRE(f.factors().size() == 2);
    CHECK(f.factors()[0].prime == std::min(p, q));
    CHECK(f.factors()[1].prime == std::max(p, q));
  }
  const auto square = factorize(std::uint64_t{1'000'003} * 1'000'003);
  REQUIRE(square.factors().size() == 1);
  CHECK(square.factors()[0] == PrimePower{1'000'003, 2});
}

TEST_CASE("FactoredInteger validates its invariants") {
  CHECK_NOTHROW(FactoredInteger(12, {{2, 2}, {3, 1}}));
  CHECK_THROWS_AS(FactoredInteger(12, {{3, 1}, {2, 2}}), InvalidArgument);
  CHECK_THROWS_AS(FactoredInteger(12, {{2, 1}, {3, 1}}), InvalidArgument);
  CHECK_THROWS_AS(FactoredInteger(1, {{2, 0}}), InvalidArgument);
  CHECK_THROWS_AS(FactoredInteger(0, {}), InvalidArgument);
}

TEST_CASE("primes_up_to") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(30) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_up_to(1'000'000).size() == 78'498);
}
