#include "apfree/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace apfree {

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, std::uint32_t p)
    : rows_(rows), cols_(cols), p_(p), a_(rows * cols, 0) {
  require_prime(p);
}

FpMatrix FpMatrix::identity(std::size_t n, std::uint32_t p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m.a_[i * n + i] = 1;
  return m;
}

FpMatrix FpMatrix::from_rows(std::span<const FpVector> rows) {
  if (rows.empty()) throw std::invalid_argument("from_rows: empty row list");
  const std::uint32_t p = rows[0].modulus();
  const std::size_t cols = rows[0].size();
  FpMatrix m(rows.size(), cols, p);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].modulus() != p) throw std::invalid_argument("modulus mismatch");
    if (rows[r].size() != cols) throw std::invalid_argument("ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m.a_[r * cols + c] = rows[r].raw()[c];
  }
  return m;
}

Fp FpMatrix::at(std::size_t r, std::size_t c) const { return Fp(a_.at(r * cols_ + c), p_); }

void FpMatrix::set(std::size_t r, std::size_t c, std::uint32_t residue) {
  a_.at(r * cols_ + c) = residue % p_;
}

FpVector FpMatrix::row(std::size_t r) const {
  FpVector out(cols_, p_);
  for (std::size_t c = 0; c < cols_; ++c) out.set(c, a_[r * cols_ + c]);
  return out;
}

FpMatrix FpMatrix::transposed() const {
  FpMatrix m(cols_, rows_, p_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) m.a_[c * rows_ + r] = a_[r * cols_ + c];
  }
  return m;
}

void FpMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap(a_[i * cols_ + c], a_[j * cols_ + c]);
}

void FpMatrix::scale_row(std::size_t i, std::uint32_t c) {
  const std::uint64_t cc = c % p_;
  for (std::size_t k = 0; k < cols_; ++k) {
    a_[i * cols_ + k] = static_cast<std::uint32_t>(cc * a_[i * cols_ + k] % p_);
  }
}

void FpMatrix::sub_scaled_row(std::size_t i, std::size_t j, std::uint32_t c) {
  const std::uint64_t cc = c % p_;
  if (cc == 0) return;
  for (std::size_t k = 0; k < cols_; ++k) {
    const std::uint64_t sub = cc * a_[j * cols_ + k] % p_;
    std::uint32_t v = a_[i * cols_ + k];
    v = v >= sub ? v - static_cast<std::uint32_t>(sub)
                 : v + p_ - static_cast<std::uint32_t>(sub);
    a_[i * cols_ + k] = v;
  }
}

std::vector<std::size_t> FpMatrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t lead = 0; lead < cols_ && r < rows_; ++lead) {
    std::size_t i = r;
    while (i < rows_ && a_[i * cols_ + lead] == 0) ++i;
    if (i == rows_) continue;
    swap_rows(i, r);
    scale_row(r, mod_inverse(a_[r * cols_ + lead], p_));
    for (std::size_t j = 0; j < rows_; ++j) {
      if (j != r) sub_scaled_row(j, r, a_[j * cols_ + lead]);
    }
    pivots.push_back(lead);
    ++r;
  }
  return pivots;
}

std::size_t rank(FpMatrix m) { return m.rref().size(); }

std::vector<FpVector> nullspace_basis(const FpMatrix& m) {
  FpMatrix r = m;
  const std::vector<std::size_t> pivots = r.rref();
  const std::uint32_t p = m.modulus();
  const std::size_t cols = m.cols();

  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;

  std::vector<FpVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    FpVector v(cols, p);
    v.set(f, 1);
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      const std::uint32_t coef = r.raw_at(i, f);
      if (coef != 0) v.set(pivots[i], p - coef);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

SubspaceFp::SubspaceFp(std::size_t ambient, std::uint32_t p) : ambient_(ambient), p_(p) {
  require_prime(p);
}

SubspaceFp SubspaceFp::from_spanning(std::span<const FpVector> vectors, std::size_t ambient,
                                     std::uint32_t p) {
  SubspaceFp u(ambient, p);
  if (vectors.empty()) return u;
  FpMatrix m = FpMatrix::from_rows(vectors);
  if (m.cols() != ambient) throw std::invalid_argument("ambient dimension mismatch");
  const auto pivots = m.rref();
  for (std::size_t i = 0; i < pivots.size(); ++i) u.basis_.push_back(m.row(i));
  return u;
}

SubspaceFp SubspaceFp::full(std::size_t ambient, std::uint32_t p) {
  SubspaceFp u(ambient, p);
  for (std::size_t i = 0; i < ambient; ++i) {
    FpVector e(ambient, p);
    e.set(i, 1);
    u.basis_.push_back(std::move(e));
  }
  return u;
}

bool SubspaceFp::contains(const FpVector& v) const {
  if (v.size() != ambient_ || v.modulus() != p_) {
    throw std::invalid_argument("ambient dimension or modulus mismatch");
  }
  // reduce against the RREF basis; member iff the residual vanishes
  std::vector<std::uint32_t> w(v.raw().begin(), v.raw().end());
  for (const auto& b : basis_) {
    std::size_t pivot = 0;
    while (pivot < ambient_ && b.raw()[pivot] == 0) ++pivot;
    const std::uint64_t coef = w[pivot];
    if (coef == 0) continue;
    for (std::size_t c = pivot; c < ambient_; ++c) {
      const std::uint64_t sub = coef * b.raw()[c] % p_;
      w[c] = w[c] >= sub ? w[c] - static_cast<std::uint32_t>(sub)
                         : w[c] + p_ - static_cast<std::uint32_t>(sub);
    }
  }
  for (auto x : w) {
    if (x != 0) return false;
  }
  return true;
}

std::vector<FpVector> SubspaceFp::elements(std::uint64_t cap) const {
  const std::uint64_t total = require_enumerable("subspace element enumeration", p_, dim(), cap);
  std::vector<FpVector> out;
  out.reserve(total);
  for (std::uint64_t id = 0; id < total; ++id) {
    FpVector v(ambient_, p_);
    std::uint64_t rest = id;
    for (const auto& b : basis_) {
      const std::uint64_t c = rest % p_;
      rest /= p_;
      if (c == 0) continue;
      for (std::size_t k = 0; k < ambient_; ++k) {
        v.set(k, static_cast<std::uint32_t>((v.raw()[k] + c * b.raw()[k]) % p_));
      }
    }
    out.push_back(std::move(v));
  }
  return out;
}

bool SubspaceFp::operator==(const SubspaceFp& o) const {
  return ambient_ == o.ambient_ && p_ == o.p_ && basis_ == o.basis_;
}

bool membership(const FpVector& v, const SubspaceFp& u) { return u.contains(v); }

SubspaceFp orthogonal_complement(const SubspaceFp& u) {
  if (u.dim() == 0) return SubspaceFp::full(u.ambient(), u.modulus());
  FpMatrix m = FpMatrix::from_rows(u.basis());
  const auto ns = nullspace_basis(m);
  return SubspaceFp::from_spanning(ns, u.ambient(), u.modulus());
}

FpVector solve_all_ones(std::span<const FpVector> vectors, std::size_t ambient, std::uint32_t p) {
  require_prime(p);
  if (ambient == 0) throw std::invalid_argument("solve_all_ones: empty ambient space");
  if (vectors.empty()) {
    FpVector w(ambient, p);
    w.set(0, 1);
    return w;
  }
  FpMatrix m = FpMatrix::from_rows(vectors);
  if (m.cols() != ambient) throw std::invalid_argument("ambient dimension mismatch");
  if (rank(m) != vectors.size()) throw std::invalid_argument("dependent set");

  // augmented system [M | 1]; consistency follows from full row rank
  FpMatrix aug(vectors.size(), ambient + 1, p);
  for (std::size_t r = 0; r < vectors.size(); ++r) {
    for (std::size_t c = 0; c < ambient; ++c) aug.set(r, c, vectors[r].raw()[c]);
    aug.set(r, ambient, 1);
  }
  const auto pivots = aug.rref();
  FpVector w(ambient, p);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    // free variables stay at zero, so the solution is canonical
    w.set(pivots[i], aug.raw_at(i, ambient));
  }
  return w;
}

std::uint64_t count_subspaces(std::uint32_t p, std::size_t ambient, std::size_t dim) {
  require_prime(p);
  if (dim > ambient) return 0;
  // q-Pascal recurrence [D m] = [D-1 m-1] + p^m [D-1 m], checked at 64 bits.
  std::vector<std::uint64_t> row(dim + 1, 0);
  row[0] = 1;
  for (std::size_t big = 1; big <= ambient; ++big) {
    for (std::size_t m = std::min(dim, big); m >= 1; --m) {
      auto pm = checked_pow_u64(p, m);
      if (!pm) throw std::overflow_error("count_subspaces overflow");
      if (row[m] != 0 && *pm > UINT64_MAX / row[m]) {
        throw std::overflow_error("count_subspaces overflow");
      }
      const std::uint64_t scaled = row[m] * *pm;
      if (scaled > UINT64_MAX - row[m - 1]) throw std::overflow_error("count_subspaces overflow");
      row[m] = row[m - 1] + scaled;
    }
  }
  return row[dim];
}

std::vector<SubspaceFp> enumerate_subspaces(std::uint32_t p, std::size_t ambient, std::size_t dim,
                                            std::uint64_t cap) {
  require_prime(p);
  if (dim > ambient) return {};
  std::uint64_t total = 0;
  try {
    total = count_subspaces(p, ambient, dim);
  } catch (const std::overflow_error&) {
    throw FeasibilityError("subspace enumeration", UINT64_MAX, cap);
  }
  if (total > cap) throw FeasibilityError("subspace enumeration", total, cap);

  std::vector<SubspaceFp> out;
  out.reserve(total);
  if (dim == 0) {
    out.emplace_back(ambient, p);
    return out;
  }

  // Generate RREF matrices directly: choose pivot columns, then fill free
  // entries (row i, col c) with c > pivot_i and c not a pivot.
  std::vector<std::size_t> pivots(dim);
  for (std::size_t i = 0; i < dim; ++i) pivots[i] = i;

  auto emit_for_pivots = [&]() {
    std::vector<std::pair<std::size_t, std::size_t>> free_slots;
    std::vector<bool> is_pivot(ambient, false);
    for (auto c : pivots) is_pivot[c] = true;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t c = pivots[i] + 1; c < ambient; ++c) {
        if (!is_pivot[c]) free_slots.emplace_back(i, c);
      }
    }
    const std::uint64_t combos =
        require_enumerable("subspace free entries", p, free_slots.size(), cap);
    for (std::uint64_t id = 0; id < combos; ++id) {
      FpMatrix m(dim, ambient, p);
      for (std::size_t i = 0; i < dim; ++i) m.set(i, pivots[i], 1);
      std::uint64_t rest = id;
      for (const auto& [r, c] : free_slots) {
        m.set(r, c, static_cast<std::uint32_t>(rest % p));
        rest /= p;
      }
      std::vector<FpVector> rows;
      rows.reserve(dim);
      for (std::size_t i = 0; i < dim; ++i) rows.push_back(m.row(i));
      out.push_back(SubspaceFp::from_spanning(rows, ambient, p));
    }
  };

  // iterate pivot-column combinations in ascending lexicographic order
  for (;;) {
    emit_for_pivots();
    bool advanced = false;
    std::size_t i = dim;
    while (i-- > 0) {
      if (pivots[i] + dim - i < ambient) {
        ++pivots[i];
        for (std::size_t j = i + 1; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

}  // namespace apfree
