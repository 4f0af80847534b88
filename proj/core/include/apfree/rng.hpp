#pragma once

#include <cstdint>

#include "apfree/fp.hpp"

namespace apfree {

/// Counter-based splittable generator. Output i of stream s is a pure
/// function of (seed, s, i), so shards and parallel trials draw from
/// disjoint streams without coordination and results never depend on the
/// worker count.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on [0, bound); unbiased via rejection sampling.
  std::uint32_t next_below(std::uint32_t bound);
  /// Uniform on [0, 1).
  double next_double();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// n iid uniform coordinates from the stream; n must be positive.
FpVector sample_vector(std::size_t n, std::uint32_t p, SplitRng& rng);

}  // namespace apfree
