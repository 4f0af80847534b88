#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "apfree/feasibility.hpp"
#include "apfree/fraction.hpp"
#include "apfree/linalg.hpp"
#include "apfree/veronese.hpp"

namespace apfree {

struct IndependenceEstimate {
  bool exact_mode = false;
  Fraction exact;  // valid in exact mode
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double estimate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 0.0;
};

/// P[phi_d(x_1..x_s) independent] by enumerating all (p^n)^s tuples.
IndependenceEstimate independence_probability_exact(std::uint32_t p, std::uint32_t n,
                                                    std::uint32_t d, std::uint32_t s,
                                                    const Caps& caps = {});

/// Monte Carlo estimate with a Wilson 95% interval; trial t draws from
/// SplitRng(seed, t), so the estimate is shard-independent.
IndependenceEstimate independence_probability_mc(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                                 std::uint32_t s, std::uint64_t trials,
                                                 std::uint64_t seed);

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z = 1.959963984540054);

struct IndependenceBound {
  Fraction bound;                 // (1 - max_U P[phi_d(x) in U])^s
  Fraction max_hit_probability;   // the maximizing subspace's hit probability
  SubspaceFp argmax_subspace;
};

/// Exhaustively maximizes P[phi_d(x) in U] over all (s-1)-dimensional
/// subspaces U (ties broken toward the canonically least basis) and returns
/// the resulting lower bound on the independence probability. Tiny regime
/// only; beyond the cap throws with a pointer to Monte Carlo mode.
IndependenceBound independence_lower_bound(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                           std::uint32_t s, const Caps& caps = {});

struct CharacterIdentityResult {
  Fraction lhs;  // P_x[v(x) = 0 for all v in V], by counting
  Fraction rhs;  // E_{v,x} chi(v(x)), recovered exactly from value histograms
  bool equal = false;
  std::complex<double> rhs_char_sum{0.0, 0.0};  // floating cross-check
};

/// Both sides of P_x(V(x) = 0) = E_{v,x} chi(v(x)) for a subspace V of
/// F_p-valued functions given as value tables over a finite domain. The
/// right side is exact: for each x the histogram of v(x) over v in V is
/// either concentrated at 0 or uniform, so the inner character sum is an
/// integer multiple of |V|. A histogram violating that (impossible for an
/// actual subspace) throws.
CharacterIdentityResult character_identity_check(const SubspaceFp& value_tables,
                                                 const Caps& caps = {});

struct BiasSplitResult {
  double expectation = 0.0;  // E_{T in Uperp} p^{-arank(T)/2^{d-1}}, exhaustive
  double term_low = 0.0;     // contribution of arank <= r0
  double term_high = 0.0;    // contribution of arank > r0
  double bound_term1_logp = 0.0;  // 2 n^{d-1} r - dim Uperp
  double bound_term2_logp = 0.0;  // -r0 / 2^{d-1}
  bool within_bound = false;      // expectation <= p^term1 + p^term2
  std::uint64_t tensors_enumerated = 0;
  std::uint64_t low_count = 0;
  std::uint64_t high_count = 0;
};

/// Enumerates U^perp as symmetric tensors and splits the exact expectation
/// at the threshold r0. Coordinates are in the monomial (content) basis of
/// the symmetric-tensor space, which stays a bijection even when p <= d.
BiasSplitResult bias_split_expectation(const SubspaceFp& uperp, std::uint32_t n, std::uint32_t d,
                                       double r0, double r, const Caps& caps = {},
                                       unsigned threads = 1);

}  // namespace apfree
