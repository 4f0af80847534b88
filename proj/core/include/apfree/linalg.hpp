#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "apfree/feasibility.hpp"
#include "apfree/fp.hpp"

namespace apfree {

/// Dense row-major matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p);
  static FpMatrix identity(std::size_t n, std::uint32_t p);
  static FpMatrix from_rows(std::span<const FpVector> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t modulus() const { return p_; }

  Fp at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, std::uint32_t residue);
  std::uint32_t raw_at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  FpVector row(std::size_t r) const;
  FpMatrix transposed() const;

  /// In-place reduced row echelon form; returns the pivot column of each
  /// nonzero row. Rank = number of pivots.
  std::vector<std::size_t> rref();

  bool operator==(const FpMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && p_ == o.p_ && a_ == o.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::uint32_t p_;
  std::vector<std::uint32_t> a_;

  void swap_rows(std::size_t i, std::size_t j);
  void scale_row(std::size_t i, std::uint32_t c);
  void sub_scaled_row(std::size_t i, std::size_t j, std::uint32_t c);  // row i -= c*row j
};

std::size_t rank(FpMatrix m);  // by value: elimination works on the copy
std::vector<FpVector> nullspace_basis(const FpMatrix& m);

/// Subspace of F_p^D kept as a reduced-row-echelon basis, so equal subspaces
/// compare equal byte-for-byte.
class SubspaceFp {
 public:
  SubspaceFp(std::size_t ambient, std::uint32_t p);  // zero subspace
  static SubspaceFp from_spanning(std::span<const FpVector> vectors, std::size_t ambient,
                                  std::uint32_t p);
  static SubspaceFp full(std::size_t ambient, std::uint32_t p);

  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  std::uint32_t modulus() const { return p_; }
  std::span<const FpVector> basis() const { return basis_; }

  bool contains(const FpVector& v) const;

  /// All p^dim elements in deterministic coefficient order
  /// (coefficient of basis row 0 is the least significant digit).
  std::vector<FpVector> elements(std::uint64_t cap) const;

  bool operator==(const SubspaceFp& o) const;

 private:
  std::size_t ambient_;
  std::uint32_t p_;
  std::vector<FpVector> basis_;
};

bool membership(const FpVector& v, const SubspaceFp& u);
SubspaceFp orthogonal_complement(const SubspaceFp& u);

/// Any w with <w, v_i> = 1 for every input vector. Canonical solution: free
/// variables pinned to zero. Dependent input throws std::invalid_argument
/// ("dependent set"); empty input yields the first coordinate vector.
FpVector solve_all_ones(std::span<const FpVector> vectors, std::size_t ambient, std::uint32_t p);

/// Number of dim-dimensional subspaces of F_p^ambient (Gaussian binomial);
/// throws std::overflow_error beyond 64 bits.
std::uint64_t count_subspaces(std::uint32_t p, std::size_t ambient, std::size_t dim);

/// Every dim-dimensional subspace, in canonical order (pivot-column sets
/// ascending, then free entries in row-major counting order).
std::vector<SubspaceFp> enumerate_subspaces(std::uint32_t p, std::size_t ambient, std::size_t dim,
                                            std::uint64_t cap);

}  // namespace apfree
