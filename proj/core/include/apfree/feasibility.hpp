#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace apfree {

// Enumeration budgets. Every exhaustive loop checks its cap up front and
// throws FeasibilityError instead of silently truncating.
struct Caps {
  std::uint64_t enum_points = std::uint64_t{1} << 24;   // point/tuple enumerations
  std::uint64_t tensor_space = std::uint64_t{1} << 20;  // exact partition-rank regime
};

class FeasibilityError : public std::runtime_error {
 public:
  FeasibilityError(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : std::runtime_error(what + " (required " + std::to_string(required) +
                           " > cap " + std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const { return required_; }
  std::uint64_t cap() const { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

// The probabilistic failure event of the witness construction: the Veronese
// image of the sampled difference set is dependent and the caller resamples.
class DependentImageError : public std::runtime_error {
 public:
  explicit DependentImageError(const std::string& what) : std::runtime_error(what) {}
};

// base^exp if it fits in 64 bits.
inline std::optional<std::uint64_t> checked_pow_u64(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return std::nullopt;
    r *= base;
  }
  return r;
}

// base^exp checked against a cap; throws FeasibilityError otherwise.
inline std::uint64_t require_enumerable(const std::string& what, std::uint64_t base,
                                        std::uint64_t exp, std::uint64_t cap) {
  auto r = checked_pow_u64(base, exp);
  if (!r || *r > cap) {
    throw FeasibilityError(what, r ? *r : UINT64_MAX, cap);
  }
  return *r;
}

}  // namespace apfree
