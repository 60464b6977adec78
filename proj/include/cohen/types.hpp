#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace cohen {

using i128 = __int128;
using u128 = unsigned __int128;

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Result does not fit the supported integer width.
class OverflowError : public std::overflow_error {
 public:
  OverflowError(const std::string& what, unsigned required_bits)
      : std::overflow_error(what + " (requires ~" +
                            std::to_string(required_bits) + " bits)"),
        required_bits_(required_bits) {}

  unsigned required_bits() const { return required_bits_; }

 private:
  unsigned required_bits_;
};

// Brute-force evaluators refuse inputs whose term count exceeds their guard.
class GuardExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

class MemoryBudgetExceeded : public std::runtime_error {
 public:
  MemoryBudgetExceeded(std::uint64_t requested, std::uint64_t allowed)
      : std::runtime_error("memory budget exceeded: requested " +
                           std::to_string(requested) + " bytes, allowed " +
                           std::to_string(allowed)),
        requested_(requested),
        allowed_(allowed) {}

  std::uint64_t requested() const { return requested_; }
  std::uint64_t allowed() const { return allowed_; }

 private:
  std::uint64_t requested_;
  std::uint64_t allowed_;
};

// An internal consistency check failed. Signals a bug, never bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

std::string to_string(i128 v);
std::string to_string(u128 v);

// Checked arithmetic; std::nullopt on overflow.
std::optional<u128> checked_mul(u128 a, u128 b);
std::optional<u128> checked_pow(u128 base, unsigned exp);

// Bits needed to hold base^exp (rounded up), for overflow diagnostics.
unsigned bits_for_power(std::uint64_t base, unsigned exp);

}  // namespace cohen
