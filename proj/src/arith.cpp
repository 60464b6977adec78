#include "cohen/arith.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>

#include "cohen/summation.hpp"

namespace cohen {

namespace {

unsigned valuation(std::uint64_t m, std::uint64_t p) {
  unsigned v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

constexpr std::array<char, 8> kCacheMagic = {'C', 'R', 'S', 'I',
                                             'E', 'V', 'E', '1'};

template <typename T>
void write_le(std::ostream& out, T v) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
  }
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T read_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw InvalidArgument("sieve cache: truncated file");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

int mobius(const FactoredInteger& n) {
  if (!n.is_squarefree()) return 0;
  return n.factors().size() % 2 == 0 ? 1 : -1;
}

u128 jordan(unsigned k, const FactoredInteger& n) {
  if (k == 0) throw InvalidArgument("jordan: k must be >= 1");
  u128 result = 1;
  for (const auto& [p, e] : n.factors()) {
    auto lower = checked_pow(p, (e - 1) * k);
    auto pk = checked_pow(p, k);
    auto upper = (lower && pk) ? checked_mul(*lower, *pk) : std::nullopt;
    auto next = upper ? checked_mul(result, *upper - *lower) : std::nullopt;
    if (!next) {
      throw OverflowError("jordan: J_" + std::to_string(k) + "(" +
                              std::to_string(n.value()) + ") overflows 128 bits",
                          bits_for_power(n.value(), k));
    }
    result = *next;
  }
  return result;
}

std::uint64_t generalized_gcd(std::uint64_t m, std::uint64_t n, unsigned s) {
  if (m == 0 || n == 0) throw InvalidArgument("generalized_gcd: m, n must be >= 1");
  if (s == 0) throw InvalidArgument("generalized_gcd: s must be >= 1");
  const std::uint64_t g = std::gcd(m, n);
  if (s == 1) return g;
  std::uint64_t result = 1;
  const FactoredInteger fg = factorize(g);
  for (const auto& [p, e] : fg.factors()) {
    for (unsigned i = 0; i < (e / s) * s; ++i) result *= p;
  }
  return result;
}

u128 generalized_gcd(std::uint64_t m, std::span<const PrimePower> n_factors,
                     unsigned s) {
  if (m == 0) throw InvalidArgument("generalized_gcd: m must be >= 1");
  if (s == 0) throw InvalidArgument("generalized_gcd: s must be >= 1");
  u128 result = 1;
  for (const auto& [p, e] : n_factors) {
    const unsigned common = std::min(valuation(m, p), e);
    for (unsigned i = 0; i < (common / s) * s; ++i) result *= p;
  }
  return result;
}

std::uint64_t tau_s(unsigned s, const FactoredInteger& n) {
  if (s == 0) throw InvalidArgument("tau_s: s must be >= 1");
  std::uint64_t count = 1;
  for (const auto& pp : n.factors()) count *= pp.exponent / s + 1;
  return count;
}

u128 divisor_sigma(const FactoredInteger& n) {
  u128 result = 1;
  for (const auto& [p, e] : n.factors()) {
    u128 term = 1, power = 1;
    for (unsigned i = 0; i < e; ++i) {
      power *= p;
      term += power;
    }
    result *= term;
  }
  return result;
}

double zeta_error_bound(unsigned z, double precision) {
  (void)z;
  return precision;
}

double zeta(unsigned z, double precision) {
  if (z <= 1) throw InvalidArgument("zeta: diverges for z <= 1");
  if (!(precision >= 1e-15)) {
    throw InvalidArgument("zeta: precision must be >= 1e-15");
  }
  const double zd = static_cast<double>(z);
  // Next Euler-Maclaurin term z M^(-z-1) / 12 bounds the remainder; keep it
  // under half the budget and leave the rest for rounding.
  const double m_real = std::pow(zd / (6.0 * precision), 1.0 / (zd + 1.0));
  const auto cutoff = static_cast<std::uint64_t>(std::max(2.0, std::ceil(m_real)));
  CompensatedSum sum;
  for (std::uint64_t n = cutoff - 1; n >= 1; --n) {
    sum += std::pow(static_cast<double>(n), -zd);
  }
  const double m = static_cast<double>(cutoff);
  sum += std::pow(m, 1.0 - zd) / (zd - 1.0);
  sum += 0.5 * std::pow(m, -zd);
  return sum.value();
}

const char* to_string(SieveKind kind) {
  switch (kind) {
    case SieveKind::kMobius:
      return "mobius";
    case SieveKind::kJordan:
      return "jordan";
    case SieveKind::kSmallestPrimeFactor:
      return "spf";
  }
  return "unknown";
}

std::uint64_t sieve_bytes(std::uint64_t limit) {
  return (limit + 1) * (sizeof(i128) + sizeof(std::uint32_t));
}

SieveTable sieve(SieveKind kind, std::uint64_t limit, unsigned order,
                 std::uint64_t memory_budget) {
  if (limit == 0) throw InvalidArgument("sieve: limit must be >= 1");
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("sieve: limit must be < 2^32");
  }
  if (kind == SieveKind::kJordan && order == 0) {
    throw InvalidArgument("sieve: jordan order must be >= 1");
  }
  if (kind != SieveKind::kJordan) order = 0;
  if (sieve_bytes(limit) > memory_budget) {
    throw MemoryBudgetExceeded(sieve_bytes(limit), memory_budget);
  }

  std::vector<i128> values(limit + 1, 0);
  std::vector<std::uint32_t> lpf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  std::vector<u128> prime_power;  // p^order, jordan only
  values[1] = 1;

  auto overflow = [&](std::uint64_t n) {
    return OverflowError("sieve: J_" + std::to_string(order) + "(" +
                             std::to_string(n) + ") overflows 128 bits",
                         bits_for_power(n, order));
  };

  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (lpf[i] == 0) {
      lpf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
      switch (kind) {
        case SieveKind::kMobius:
          values[i] = -1;
          break;
        case SieveKind::kSmallestPrimeFactor:
          values[i] = static_cast<i128>(i);
          break;
        case SieveKind::kJordan: {
          auto pk = checked_pow(i, order);
          if (!pk || *pk > static_cast<u128>(std::numeric_limits<i128>::max())) {
            throw overflow(i);
          }
          prime_power.push_back(*pk);
          values[i] = static_cast<i128>(*pk - 1);
          break;
        }
      }
    }
    for (std::size_t j = 0; j < primes.size(); ++j) {
      const std::uint64_t p = primes[j];
      if (p > lpf[i] || p * i > limit) break;
      const std::uint64_t target = p * i;
      lpf[target] = static_cast<std::uint32_t>(p);
      const bool divides = (p == lpf[i]);
      switch (kind) {
        case SieveKind::kMobius:
          values[target] = divides ? 0 : -values[i];
          break;
        case SieveKind::kSmallestPrimeFactor:
          values[target] = static_cast<i128>(p);
          break;
        case SieveKind::kJordan: {
          const u128 factor = divides ? prime_power[j] : prime_power[j] - 1;
          auto next = checked_mul(static_cast<u128>(values[i]), factor);
          if (!next || *next > static_cast<u128>(std::numeric_limits<i128>::max())) {
            throw overflow(target);
          }
          values[target] = static_cast<i128>(*next);
          break;
        }
      }
    }
  }
  return SieveTable(kind, order, limit, std::move(values));
}

void save_sieve_cache(const SieveTable& table, const std::filesystem::path& path) {
  for (i128 v : table.values()) {
    if (v > std::numeric_limits<std::int64_t>::max() ||
        v < std::numeric_limits<std::int64_t>::min()) {
      throw OverflowError("sieve cache: entry " + to_string(v) +
                              " does not fit 64-bit cache entries",
                          128);
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidArgument("sieve cache: cannot open " + path.string());
  out.write(kCacheMagic.data(), kCacheMagic.size());
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(table.kind()));
  write_le<std::uint32_t>(out, table.order());
  write_le<std::uint64_t>(out, table.limit());
  for (i128 v : table.values()) {
    write_le<std::uint64_t>(out, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
  }
  if (!out) throw InvalidArgument("sieve cache: write failed for " + path.string());
}

SieveTable load_sieve_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("sieve cache: cannot open " + path.string());
  std::array<char, 8> magic;
  in.read(magic.data(), magic.size());
  if (!in || magic != kCacheMagic) throw InvalidArgument("sieve cache: bad magic");
  const auto raw_kind = read_le<std::uint32_t>(in);
  if (raw_kind < 1 || raw_kind > 3) throw InvalidArgument("sieve cache: bad kind tag");
  const auto kind = static_cast<SieveKind>(raw_kind);
  const auto order = read_le<std::uint32_t>(in);
  const auto limit = read_le<std::uint64_t>(in);
  if (limit == 0 || limit > std::numeric_limits<std::uint32_t>::max()) {
    throw InvalidArgument("sieve cache: bad limit");
  }
  if ((kind == SieveKind::kJordan) != (order != 0)) {
    throw InvalidArgument("sieve cache: order inconsistent with kind");
  }
  std::vector<i128> values(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    values[n] = static_cast<std::int64_t>(read_le<std::uint64_t>(in));
  }
  if (in.peek() != std::ifstream::traits_type::eof()) {
    throw InvalidArgument("sieve cache: trailing bytes");
  }
  if (values[1] != 1) throw InvalidArgument("sieve cache: values[1] must be 1");
  return SieveTable(kind, order, limit, std::move(values));
}

}  // namespace cohen
