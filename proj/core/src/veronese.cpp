#include "apfree/veronese.hpp"

#include <algorithm>
#include <stdexcept>

namespace apfree {

std::uint64_t binomial_u64(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    const unsigned __int128 t = static_cast<unsigned __int128>(r) * (a - b + i);
    if (t / i > UINT64_MAX) throw std::overflow_error("binomial_u64 overflow");
    r = static_cast<std::uint64_t>(t / i);
  }
  return r;
}

std::uint64_t multinomial_u64(std::uint32_t d, std::span<const std::uint8_t> exponents) {
  if (d > 20) throw std::invalid_argument("multinomial_u64: degree too large");
  std::uint64_t acc = 0, r = 1;
  for (auto e : exponents) {
    acc += e;
    r *= binomial_u64(acc, e);  // product of binomials of partial sums
  }
  if (acc != d) throw std::invalid_argument("multinomial_u64: exponents do not sum to degree");
  return r;
}

MonomialBasis::MonomialBasis(std::uint32_t n, std::uint32_t d) : n_(n), d_(d) {
  if (n == 0) throw std::invalid_argument("MonomialBasis: no variables");
  std::vector<std::uint8_t> cur(n, 0);
  // descending lexicographic: leading exponent counts down at every level
  auto gen = [&](auto&& self, std::uint32_t pos, std::uint32_t remaining) -> void {
    if (pos + 1 == n_) {
      cur[pos] = static_cast<std::uint8_t>(remaining);
      exps_.push_back(cur);
      return;
    }
    for (std::uint32_t e = remaining + 1; e-- > 0;) {
      cur[pos] = static_cast<std::uint8_t>(e);
      self(self, pos + 1, remaining - e);
    }
  };
  gen(gen, 0, d);
  for (std::size_t i = 0; i < exps_.size(); ++i) index_[exps_[i]] = i;
  if (exps_.size() != binomial_u64(n + d - 1, d)) {
    throw std::logic_error("MonomialBasis: dimension mismatch");
  }
}

std::span<const std::uint8_t> MonomialBasis::exponents(std::size_t pos) const {
  return exps_.at(pos);
}

std::size_t MonomialBasis::position(std::span<const std::uint8_t> e) const {
  const auto it = index_.find(std::vector<std::uint8_t>(e.begin(), e.end()));
  if (it == index_.end()) throw std::invalid_argument("unknown exponent vector");
  return it->second;
}

std::size_t MonomialBasis::position_of_tuple(std::span<const std::uint32_t> idx) const {
  std::vector<std::uint8_t> e(n_, 0);
  for (auto i : idx) {
    if (i >= n_) throw std::out_of_range("tuple index out of range");
    ++e[i];
  }
  return position(e);
}

std::vector<std::uint32_t> MonomialBasis::representative_tuple(std::size_t pos) const {
  const auto& e = exps_.at(pos);
  std::vector<std::uint32_t> idx;
  idx.reserve(d_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    for (std::uint8_t k = 0; k < e[i]; ++k) idx.push_back(i);
  }
  return idx;
}

VeroneseVector veronese_map(const FpVector& x, std::uint32_t d) {
  if (d == 0) throw std::invalid_argument("veronese_map: degree must be positive");
  const std::uint32_t p = x.modulus();
  const std::uint32_t n = static_cast<std::uint32_t>(x.size());
  const MonomialBasis basis(n, d);

  // power table x_i^e for e <= d
  std::vector<std::vector<std::uint32_t>> pw(n, std::vector<std::uint32_t>(d + 1, 1));
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t e = 1; e <= d; ++e) {
      pw[i][e] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(pw[i][e - 1]) *
                                            x.raw()[i] % p);
    }
  }

  FpVector out(basis.dimension(), p);
  for (std::size_t pos = 0; pos < basis.dimension(); ++pos) {
    const auto e = basis.exponents(pos);
    std::uint64_t v = 1;
    for (std::uint32_t i = 0; i < n; ++i) v = v * pw[i][e[i]] % p;
    out.set(pos, static_cast<std::uint32_t>(v));
  }
  return {out, n, d};
}

VeroneseVector symmetric_to_dual(const SymmetricTensor& t) {
  const std::uint32_t p = t.modulus(), n = t.side(), d = t.order();
  const MonomialBasis basis(n, d);
  FpVector out(basis.dimension(), p);
  for (std::size_t pos = 0; pos < basis.dimension(); ++pos) {
    const auto rep = basis.representative_tuple(pos);
    const std::uint64_t mult = multinomial_u64(d, basis.exponents(pos)) % p;
    out.set(pos, static_cast<std::uint32_t>(mult * t.tensor().at(rep).value() % p));
  }
  return {out, n, d};
}

SymmetricTensor dual_to_symmetric(const VeroneseVector& v, std::uint32_t p) {
  const std::uint32_t n = v.ambient_n, d = v.degree;
  if (v.entries.modulus() != p) throw std::invalid_argument("modulus mismatch");
  if (p <= d) throw std::invalid_argument("characteristic too small: need p > d");
  const MonomialBasis basis(n, d);
  if (v.entries.size() != basis.dimension()) {
    throw std::invalid_argument("dual vector length mismatch");
  }

  // coefficient shared by every tuple of content e: v[e] / multinomial(d;e)
  std::vector<std::uint32_t> per_pos(basis.dimension());
  for (std::size_t pos = 0; pos < basis.dimension(); ++pos) {
    const std::uint32_t mult =
        static_cast<std::uint32_t>(multinomial_u64(d, basis.exponents(pos)) % p);
    per_pos[pos] = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(v.entries.raw()[pos]) * mod_inverse(mult, p) % p);
  }

  Tensor t(p, n, d);
  std::vector<std::uint32_t> idx(d);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rest = flat;
    for (std::uint32_t j = d; j-- > 0;) {
      idx[j] = static_cast<std::uint32_t>(rest % n);
      rest /= n;
    }
    t.set_flat(flat, per_pos[basis.position_of_tuple(idx)]);
  }
  return SymmetricTensor(std::move(t));
}

SymmetricTensor symmetric_from_content(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                       const FpVector& content) {
  const MonomialBasis basis(n, d);
  if (content.size() != basis.dimension() || content.modulus() != p) {
    throw std::invalid_argument("content vector shape mismatch");
  }
  Tensor t(p, n, d);
  std::vector<std::uint32_t> idx(d);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rest = flat;
    for (std::uint32_t j = d; j-- > 0;) {
      idx[j] = static_cast<std::uint32_t>(rest % n);
      rest /= n;
    }
    t.set_flat(flat, content.raw()[basis.position_of_tuple(idx)]);
  }
  return SymmetricTensor(std::move(t));
}

SymmetricTensor random_symmetric(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                 SplitRng& rng) {
  const MonomialBasis basis(n, d);
  FpVector content(basis.dimension(), p);
  for (std::size_t i = 0; i < content.size(); ++i) content.set(i, rng.next_below(p));
  return symmetric_from_content(p, n, d, content);
}

bool image_independence(std::span<const FpVector> s, std::uint32_t d) {
  if (s.empty()) return true;
  std::vector<FpVector> images;
  images.reserve(s.size());
  for (const auto& x : s) images.push_back(veronese_map(x, d).entries);
  FpMatrix m = FpMatrix::from_rows(images);
  return rank(std::move(m)) == s.size();
}

}  // namespace apfree
