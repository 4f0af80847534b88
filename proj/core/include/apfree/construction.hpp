#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "apfree/feasibility.hpp"
#include "apfree/fraction.hpp"
#include "apfree/rng.hpp"
#include "apfree/veronese.hpp"

namespace apfree {

/// Multiset of candidate common differences, in draw order. Element i is
/// drawn from SplitRng(seed, stream_base + i), so any element is
/// reproducible from its draw index alone.
struct DifferenceSet {
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  std::vector<FpVector> elements;
};

DifferenceSet sample_difference_set(std::uint32_t p, std::uint32_t n, std::uint64_t s,
                                    std::uint64_t seed, std::uint64_t stream_base = 0);

/// Dual vector w with <w, phi_d(s)> = 1 for every s in S (canonical
/// solution). Throws DependentImageError when the Veronese image of S is
/// dependent -- the probabilistic failure event the caller resamples.
VeroneseVector find_dual_vector(const DifferenceSet& s, std::uint32_t d);

/// The nonzero symmetric d-tensor T = dual_to_symmetric(w); guarantees
/// T(s,...,s) = 1 for every s in S. Requires p >= d + 1.
SymmetricTensor find_tensor(const DifferenceSet& s, std::uint32_t d);

/// A = {x : T(x,...,x) = 0} by exhaustive enumeration of F_p^n.
struct WitnessSet {
  SymmetricTensor tensor;
  std::vector<std::uint64_t> members;  // packed indices, ascending
  std::uint64_t space_size = 0;        // p^n
  Fraction density;                    // |A| / p^n, exact

  bool contains_packed(std::uint64_t id) const { return bitmap_[id]; }
  const std::vector<bool>& bitmap() const { return bitmap_; }

  WitnessSet(SymmetricTensor t, std::vector<std::uint64_t> m, std::uint64_t space,
             std::vector<bool> bitmap);

 private:
  std::vector<bool> bitmap_;
};

/// Enumerates the zero set and checks the Chevalley--Warning facts it is
/// entitled to: 0 in A always; when n > d, |A| >= p^{n-d} and p | |A|.
WitnessSet build_witness(const SymmetricTensor& t, const Caps& caps = {}, unsigned threads = 1);

struct KapCounterexample {
  FpVector x;
  FpVector s;
  std::size_t s_index;
};

struct KapVerdict {
  bool no_kap = false;
  std::optional<KapCounterexample> counterexample;
};

/// True iff no x and nonzero s in S have all of x, x+s, ..., x+(k-1)s inside
/// A. "Proper" means s != 0; with p >= k the k points are then distinct
/// automatically. On failure returns the counterexample with the lowest
/// (s index, packed x), independent of worker count.
KapVerdict verify_no_kap(const WitnessSet& a, const DifferenceSet& s, std::uint32_t k,
                         const Caps& caps = {}, unsigned threads = 1);

/// d-th finite difference of Q(.) = T(.,...,.) along s at x:
/// sum_j binom(d,j) (-1)^{d-j} Q(x + j s). Identically d! * Q(s), which is
/// the obstruction: a full (d+1)-term progression inside the zero set would
/// force Q(s) = 0. Requires p > d.
Fp finite_difference_check(const SymmetricTensor& t, const FpVector& x, const FpVector& s);

/// One seeded end-to-end run: sample S, test independence, find T, build A,
/// verify absence of k-APs. Failure of independence is recorded, not thrown.
struct PipelineTrial {
  std::uint64_t trial_index = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  DifferenceSet difference_set;
  bool independent = false;
  std::optional<FpVector> dual;
  std::optional<SymmetricTensor> tensor;
  std::optional<std::uint64_t> witness_size;
  std::optional<Fraction> density;
  std::optional<KapVerdict> verdict;
  bool zero_in_witness = true;   // checked when a witness was built
  bool floor_ok = true;          // |A| >= p^{n-d} (only asserted when n > d)
  bool divisibility_ok = true;   // p divides |A| (only asserted when n > d)
};

PipelineTrial run_pipeline_trial(std::uint32_t p, std::uint32_t k, std::uint32_t n,
                                 std::uint64_t s, std::uint64_t seed, std::uint64_t trial_index,
                                 const Caps& caps = {}, unsigned threads = 1);

}  // namespace apfree
