#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "apfree/feasibility.hpp"
#include "apfree/linalg.hpp"
#include "apfree/tensor.hpp"

namespace apfree {

/// Unordered partition of the d argument slots into two nonempty sides,
/// stored canonically with slot 0 on the left.
struct PartitionSplit {
  std::vector<std::uint8_t> left;   // ascending, contains 0
  std::vector<std::uint8_t> right;  // ascending complement, nonempty
};

/// One product term T_1(x_left) * T_2(x_right); coefficient arrays are
/// row-major over the slots of each side in ascending order.
struct RankOneTerm {
  PartitionSplit split;
  std::vector<std::uint32_t> left_coeffs;
  std::vector<std::uint32_t> right_coeffs;
};

Tensor materialize(const RankOneTerm& term, std::uint32_t p, std::uint32_t n, std::uint32_t d);

struct RankCertificate {
  std::vector<RankOneTerm> terms;
};

/// Sum of the terms; tests re-verify every certificate against its tensor.
Tensor reconstruct(const RankCertificate& cert, std::uint32_t p, std::uint32_t n, std::uint32_t d);

/// Every tensor of partition rank exactly 1, each once, in canonical order:
/// splits by (arity, mask), then left form (first nonzero coefficient
/// normalized to 1), then right form; later duplicate products are skipped.
struct RankOneSet {
  std::vector<RankOneTerm> terms;
  std::vector<std::uint64_t> ids;  // packed tensor ids, parallel to terms
};
RankOneSet prank1_enumerate(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                            const Caps& caps = {});

/// Exact partition rank of every tensor in the space: breadth-first closure
/// from 0 under adding rank-1 generators, with parent links for
/// certificates.
class PrankTable {
 public:
  static PrankTable build(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                          const Caps& caps = {});

  std::uint32_t modulus() const { return p_; }
  std::uint32_t side() const { return n_; }
  std::uint32_t order() const { return d_; }
  std::uint64_t space_size() const { return space_; }

  std::uint32_t prank_of_id(std::uint64_t id) const;
  std::uint32_t prank_of(const Tensor& t) const { return prank_of_id(t.to_id()); }
  std::uint32_t max_prank() const;
  std::uint64_t count_at_most(std::uint32_t r) const;
  RankCertificate certificate_for(std::uint64_t id) const;
  const RankOneSet& generators() const { return gens_; }

 private:
  std::uint32_t p_, n_, d_;
  std::uint64_t space_;
  RankOneSet gens_;
  std::vector<std::uint8_t> level_;
  std::vector<std::uint32_t> parent_gen_;
  std::vector<std::uint32_t> parent_prev_;
  std::vector<std::uint64_t> count_per_level_;

  PrankTable() = default;
};

enum class PrankStatus {
  exact,         // value is the exact partition rank
  exceeds_rmax,  // exact value known but greater than the requested r_max
  upper_bound    // space beyond the exact cap; value from a greedy certificate
};

struct PrankResult {
  PrankStatus status;
  std::uint32_t value;
  RankCertificate certificate;
};

/// Exact by exhaustive search within the cap; d = 2 delegates to matrix rank
/// (no cap). Beyond the cap returns a clearly labeled greedy upper bound.
PrankResult partition_rank(const Tensor& t, std::uint32_t r_max, const Caps& caps = {});

/// d = 2 anchor: partition rank of a matrix is its rank.
std::size_t matrix_prank_oracle(const FpMatrix& m);

struct LowPrankCount {
  std::uint64_t count;            // |{T : prank(T) <= r}|, exact
  double bound_exponent_logp;     // 2 n^{d-1} r
  bool within_bound;              // count <= p^{2 n^{d-1} r}
};
LowPrankCount count_low_prank(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                              const Caps& caps = {});

/// Union bound on the number of rank-1 tensors from counting (split, T1, T2)
/// choices: sum_a binom(d,a) p^{n^a + n^{d-a}}, as a log_p value.
double prank1_count_bound_logp(std::uint32_t p, std::uint32_t n, std::uint32_t d);

/// Exact integer test of bias >= p^{-prank}, i.e. arank <= prank, from the
/// raw bias counts (no floating point).
bool arank_leq_prank_exact(std::uint64_t bias_count, std::uint32_t bias_exponent,
                           std::uint32_t prank, std::uint32_t p);

struct RankAuditRow {
  std::uint64_t tensor_id;
  std::uint32_t prank;
  double arank;
  std::uint64_t bias_num;       // unreduced kernel count
  std::uint32_t bias_den_exp;   // denominator is p^bias_den_exp
};

std::vector<RankAuditRow> rank_audit_table(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                           const Caps& caps = {}, unsigned threads = 1);
void write_rank_table_csv(std::ostream& os, std::span<const RankAuditRow> rows);

/// Smallest alpha with prank <= alpha * arank * (log(1 + arank) + 1) over all
/// nonzero tensors in the table.
double measured_alpha(std::span<const RankAuditRow> rows);

}  // namespace apfree
