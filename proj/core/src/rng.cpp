#include "apfree/rng.hpp"

#include <stdexcept>

namespace apfree {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

SplitRng::SplitRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed),
      stream_(stream),
      key_(mix(mix(seed + kGamma) ^ mix(stream + 0x6A09E667F3BCC909ull))) {}

std::uint64_t SplitRng::next_u64() { return mix(key_ + (++counter_) * kGamma); }

std::uint32_t SplitRng::next_below(std::uint32_t bound) {
  if (bound == 0) throw std::invalid_argument("next_below: zero bound");
  if (bound == 1) return 0;
  // Rejection from 32-bit draws keeps the distribution exactly uniform.
  const std::uint64_t span = (std::uint64_t{1} << 32) - ((std::uint64_t{1} << 32) % bound);
  for (;;) {
    const std::uint64_t x = next_u64() >> 32;
    if (x < span) return static_cast<std::uint32_t>(x % bound);
  }
}

double SplitRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

FpVector sample_vector(std::size_t n, std::uint32_t p, SplitRng& rng) {
  if (n == 0) throw std::invalid_argument("sample_vector: length must be positive");
  require_prime(p);
  FpVector out(n, p);
  for (std::size_t i = 0; i < n; ++i) out.set(i, rng.next_below(p));
  return out;
}

}  // namespace apfree
