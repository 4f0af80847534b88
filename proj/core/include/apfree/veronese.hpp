#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "apfree/linalg.hpp"
#include "apfree/tensor.hpp"

namespace apfree {

/// binom(a, b) with overflow checking.
std::uint64_t binomial_u64(std::uint64_t a, std::uint64_t b);
/// d! / prod(e_i!) for an exponent vector summing to d (d <= 20).
std::uint64_t multinomial_u64(std::uint32_t d, std::span<const std::uint8_t> exponents);

/// All exponent vectors (e_1..e_n) with sum d, in descending lexicographic
/// order: (d,0,...,0) first, (0,...,0,d) last. Position in this list is the
/// coordinate used by every Veronese vector and file format.
class MonomialBasis {
 public:
  MonomialBasis(std::uint32_t n, std::uint32_t d);

  std::uint32_t vars() const { return n_; }
  std::uint32_t degree() const { return d_; }
  std::size_t dimension() const { return exps_.size(); }  // binom(n+d-1, d)

  std::span<const std::uint8_t> exponents(std::size_t pos) const;
  std::size_t position(std::span<const std::uint8_t> e) const;
  /// Position of the content of an index tuple (multiplicity of each index).
  std::size_t position_of_tuple(std::span<const std::uint32_t> idx) const;
  /// Nondecreasing index tuple with the given content, e.g. e=(2,0,1) -> (0,0,2).
  std::vector<std::uint32_t> representative_tuple(std::size_t pos) const;

 private:
  std::uint32_t n_, d_;
  std::vector<std::vector<std::uint8_t>> exps_;
  std::map<std::vector<std::uint8_t>, std::size_t> index_;
};

/// Element of F_p^{binom(n+d-1,d)} in the monomial coordinates above.
struct VeroneseVector {
  FpVector entries;
  std::uint32_t ambient_n;
  std::uint32_t degree;
};

/// phi_d(x): entry at exponent vector e is prod_i x_i^{e_i}.
VeroneseVector veronese_map(const FpVector& x, std::uint32_t d);

/// v_T with <v_T, phi_d(x)> = T(x,...,x): entry at e is multinomial(d;e)
/// times the (shared) coefficient of any index tuple of content e.
VeroneseVector symmetric_to_dual(const SymmetricTensor& t);

/// Two-sided inverse of symmetric_to_dual; needs p > d so the multinomial
/// coefficients are invertible. Throws std::invalid_argument
/// ("characteristic too small") otherwise.
SymmetricTensor dual_to_symmetric(const VeroneseVector& v, std::uint32_t p);

/// Symmetric tensor whose coefficient at every tuple of content e is
/// content[e]. Valid for any p (this is the monomial basis of the symmetric
/// tensor space, not the dual correspondence).
SymmetricTensor symmetric_from_content(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                       const FpVector& content);
SymmetricTensor random_symmetric(std::uint32_t p, std::uint32_t n, std::uint32_t d, SplitRng& rng);

/// True iff {phi_d(s) : s in S} is linearly independent; false whenever S
/// contains 0 or a repeat.
bool image_independence(std::span<const FpVector> s, std::uint32_t d);

}  // namespace apfree
