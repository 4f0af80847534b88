#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "apfree/feasibility.hpp"
#include "apfree/fp.hpp"
#include "apfree/fraction.hpp"
#include "apfree/rng.hpp"

namespace apfree {

/// Dense d-linear form on F_p^n: an n^d coefficient box, row-major with the
/// first index slowest.
class Tensor {
 public:
  Tensor(std::uint32_t p, std::uint32_t n, std::uint32_t d);  // zero tensor

  std::uint32_t modulus() const { return p_; }
  std::uint32_t side() const { return n_; }
  std::uint32_t order() const { return d_; }
  std::size_t size() const { return c_.size(); }  // n^d
  std::span<const std::uint32_t> coeffs() const { return c_; }

  std::size_t flat_index(std::span<const std::uint32_t> idx) const;
  Fp at(std::span<const std::uint32_t> idx) const;
  void set(std::span<const std::uint32_t> idx, std::uint32_t residue);
  void set_flat(std::size_t flat, std::uint32_t residue);
  std::uint32_t raw_flat(std::size_t flat) const { return c_[flat]; }

  bool is_zero() const;
  Tensor operator+(const Tensor& o) const;
  Tensor operator-(const Tensor& o) const;
  Tensor scaled(std::uint64_t c) const;
  bool operator==(const Tensor& o) const;

  /// Packed coefficient box as an integer: flat position 0 is the least
  /// significant base-p digit. Requires p^(n^d) to fit 64 bits.
  std::uint64_t to_id() const;
  static Tensor from_id(std::uint64_t id, std::uint32_t p, std::uint32_t n, std::uint32_t d);
  /// p^(n^d), checked against the cap.
  static std::uint64_t space_size(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                  std::uint64_t cap);

  static Tensor random(std::uint32_t p, std::uint32_t n, std::uint32_t d, SplitRng& rng);

  /// T(x_1, ..., x_d); all arguments length n over the same modulus.
  Fp eval(std::span<const FpVector> args) const;
  /// T(x, ..., x).
  Fp diagonal_eval(const FpVector& x) const;

 private:
  std::uint32_t p_, n_, d_;
  std::vector<std::uint32_t> c_;
};

/// d-tensor invariant under every permutation of its indices (verified at
/// construction).
class SymmetricTensor {
 public:
  explicit SymmetricTensor(Tensor t);

  const Tensor& tensor() const { return t_; }
  std::uint32_t modulus() const { return t_.modulus(); }
  std::uint32_t side() const { return t_.side(); }
  std::uint32_t order() const { return t_.order(); }
  Fp diagonal_eval(const FpVector& x) const { return t_.diagonal_eval(x); }
  bool operator==(const SymmetricTensor& o) const { return t_ == o.t_; }

 private:
  Tensor t_;
};

struct BiasValue {
  enum class Kind { multilinear, diagonal };
  Kind kind = Kind::multilinear;
  // Multilinear path: bias = count / p^exponent with exponent = n(d-1);
  // count is the number of (x_1..x_{d-1}) prefixes whose induced linear form
  // in the last slot vanishes identically. Integers are the source of truth.
  std::uint64_t count = 0;
  std::uint32_t exponent = 0;
  Fraction exact;
  double value = 0.0;
  // Diagonal path: (1/p^n) sum_x chi(T(x,...,x)); value = |complex_value|.
  std::complex<double> complex_value{0.0, 0.0};
};

/// Exact bias of a multilinear form, computed by kernel counting (the
/// average of chi over the last argument is a 0/1 indicator, so no floats
/// enter). Enumerates p^{n(d-1)} prefixes; capped.
BiasValue bias_multilinear(const Tensor& t, const Caps& caps = {}, unsigned threads = 1);

/// -log_p of the exact bias. Integer-valued results (e.g. matrix rank for
/// d = 2) are reproduced exactly because powers of p are factored out before
/// any floating log.
double analytic_rank(const Tensor& t, const Caps& caps = {}, unsigned threads = 1);
double analytic_rank_from_counts(std::uint64_t count, std::uint32_t exponent, std::uint32_t p);

/// Integer counts of each diagonal value T(x,..,x) over all p^n points.
std::vector<std::uint64_t> diagonal_histogram(const Tensor& t, const Caps& caps = {},
                                              unsigned threads = 1);

/// (1/p^n) sum_x chi(T(x,...,x)); one exact-count-weighted character sum over
/// the histogram, so float error does not grow with p^n.
BiasValue diagonal_bias(const Tensor& t, const Character& chi, const Caps& caps = {},
                        unsigned threads = 1);

}  // namespace apfree
