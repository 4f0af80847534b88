#include "apfree/prank.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "apfree/parallel.hpp"
#include "apfree/veronese.hpp"

namespace apfree {

namespace {

std::size_t pow_sz(std::size_t n, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= n;
  return r;
}

}  // namespace

Tensor materialize(const RankOneTerm& term, std::uint32_t p, std::uint32_t n, std::uint32_t d) {
  const auto& left = term.split.left;
  const auto& right = term.split.right;
  if (left.empty() || right.empty() || left.size() + right.size() != d) {
    throw std::invalid_argument("materialize: bad split");
  }
  if (term.left_coeffs.size() != pow_sz(n, left.size()) ||
      term.right_coeffs.size() != pow_sz(n, right.size())) {
    throw std::invalid_argument("materialize: coefficient array size mismatch");
  }

  Tensor t(p, n, d);
  std::vector<std::uint32_t> idx(d);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t rest = flat;
    for (std::uint32_t j = d; j-- > 0;) {
      idx[j] = static_cast<std::uint32_t>(rest % n);
      rest /= n;
    }
    std::size_t li = 0, ri = 0;
    for (auto s : left) li = li * n + idx[s];
    for (auto s : right) ri = ri * n + idx[s];
    t.set_flat(flat, static_cast<std::uint32_t>(
                         static_cast<std::uint64_t>(term.left_coeffs[li]) *
                         term.right_coeffs[ri] % p));
  }
  return t;
}

Tensor reconstruct(const RankCertificate& cert, std::uint32_t p, std::uint32_t n,
                   std::uint32_t d) {
  Tensor sum(p, n, d);
  for (const auto& term : cert.terms) sum = sum + materialize(term, p, n, d);
  return sum;
}

RankOneSet prank1_enumerate(std::uint32_t p, std::uint32_t n, std::uint32_t d, const Caps& caps) {
  if (d < 2) throw std::invalid_argument("prank1_enumerate: order must be at least 2");
  const std::uint64_t space = Tensor::space_size(p, n, d, caps.tensor_space);

  // splits with slot 0 on the left, ordered by (arity, mask)
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << d) - 1; ++m) {
    if (m & 1u) masks.push_back(m);
  }
  std::stable_sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    const int ca = __builtin_popcount(a), cb = __builtin_popcount(b);
    return ca != cb ? ca < cb : a < b;
  });

  RankOneSet out;
  std::vector<bool> seen(space, false);

  std::vector<std::uint32_t> lc, rc;
  for (const auto mask : masks) {
    PartitionSplit split;
    for (std::uint8_t j = 0; j < d; ++j) {
      if (mask & (1u << j)) {
        split.left.push_back(j);
      } else {
        split.right.push_back(j);
      }
    }
    const std::size_t llen = pow_sz(n, split.left.size());
    const std::size_t rlen = pow_sz(n, split.right.size());
    const std::uint64_t lcount = *checked_pow_u64(p, llen);
    const std::uint64_t rcount = *checked_pow_u64(p, rlen);

    for (std::uint64_t li = 0; li < lcount; ++li) {
      lc.assign(llen, 0);
      std::uint64_t rest = li;
      for (std::size_t i = 0; i < llen; ++i) {
        lc[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      // scalar ambiguity T1*T2 = (c T1)(c^{-1} T2): pin the first nonzero
      // left coefficient to 1
      std::size_t first = 0;
      while (first < llen && lc[first] == 0) ++first;
      if (first == llen || lc[first] != 1) continue;

      for (std::uint64_t ri = 1; ri < rcount; ++ri) {
        rc.assign(rlen, 0);
        std::uint64_t rrest = ri;
        for (std::size_t i = 0; i < rlen; ++i) {
          rc[i] = static_cast<std::uint32_t>(rrest % p);
          rrest /= p;
        }
        RankOneTerm term{split, lc, rc};
        const std::uint64_t id = materialize(term, p, n, d).to_id();
        if (!seen[id]) {
          seen[id] = true;
          out.terms.push_back(std::move(term));
          out.ids.push_back(id);
        }
      }
    }
  }
  return out;
}

PrankTable PrankTable::build(std::uint32_t p, std::uint32_t n, std::uint32_t d, const Caps& caps) {
  PrankTable t;
  t.p_ = p;
  t.n_ = n;
  t.d_ = d;
  t.space_ = Tensor::space_size(p, n, d, caps.tensor_space);
  t.gens_ = prank1_enumerate(p, n, d, caps);

  const std::size_t box = pow_sz(n, d);
  std::vector<std::vector<std::uint32_t>> gen_digits(t.gens_.ids.size(),
                                                     std::vector<std::uint32_t>(box));
  for (std::size_t g = 0; g < t.gens_.ids.size(); ++g) {
    std::uint64_t rest = t.gens_.ids[g];
    for (std::size_t i = 0; i < box; ++i) {
      gen_digits[g][i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
  }

  t.level_.assign(t.space_, 0xFF);
  t.parent_gen_.assign(t.space_, UINT32_MAX);
  t.parent_prev_.assign(t.space_, UINT32_MAX);
  t.level_[0] = 0;

  std::vector<std::uint64_t> frontier{0};
  std::vector<std::uint64_t> next;
  std::vector<std::uint32_t> digits(box);
  std::uint8_t cur = 0;
  std::uint64_t assigned = 1;
  t.count_per_level_.push_back(1);

  while (!frontier.empty() && assigned < t.space_) {
    next.clear();
    for (const auto id : frontier) {
      std::uint64_t rest = id;
      for (std::size_t i = 0; i < box; ++i) {
        digits[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      for (std::size_t g = 0; g < gen_digits.size(); ++g) {
        std::uint64_t sid = 0;
        const auto& gd = gen_digits[g];
        for (std::size_t i = box; i-- > 0;) {
          std::uint32_t s = digits[i] + gd[i];
          if (s >= p) s -= p;
          sid = sid * p + s;
        }
        if (t.level_[sid] == 0xFF) {
          t.level_[sid] = static_cast<std::uint8_t>(cur + 1);
          t.parent_gen_[sid] = static_cast<std::uint32_t>(g);
          t.parent_prev_[sid] = static_cast<std::uint32_t>(id);
          next.push_back(sid);
          ++assigned;
        }
      }
    }
    frontier.swap(next);
    if (!frontier.empty()) {
      ++cur;
      t.count_per_level_.push_back(frontier.size());
    }
  }
  // every tensor is a sum of elementary (rank-1) tensors, so closure is total
  if (assigned != t.space_) throw std::logic_error("partition-rank closure incomplete");
  return t;
}

std::uint32_t PrankTable::prank_of_id(std::uint64_t id) const {
  if (id >= space_) throw std::out_of_range("tensor id out of range");
  return level_[id];
}

std::uint32_t PrankTable::max_prank() const {
  return static_cast<std::uint32_t>(count_per_level_.size() - 1);
}

std::uint64_t PrankTable::count_at_most(std::uint32_t r) const {
  std::uint64_t c = 0;
  for (std::size_t lvl = 0; lvl < count_per_level_.size() && lvl <= r; ++lvl) {
    c += count_per_level_[lvl];
  }
  return c;
}

RankCertificate PrankTable::certificate_for(std::uint64_t id) const {
  if (id >= space_) throw std::out_of_range("tensor id out of range");
  RankCertificate cert;
  while (id != 0) {
    cert.terms.push_back(gens_.terms[parent_gen_[id]]);
    id = parent_prev_[id];
  }
  return cert;
}

std::size_t matrix_prank_oracle(const FpMatrix& m) { return rank(m); }

namespace {

// column-times-row certificate of a matrix from its RREF (M = C * R)
RankCertificate matrix_certificate(const Tensor& t) {
  const std::uint32_t p = t.modulus(), n = t.side();
  FpMatrix m(n, n, p);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t idx[2] = {i, j};
      m.set(i, j, t.at(idx).value());
    }
  }
  FpMatrix r = m;
  const auto pivots = r.rref();

  RankCertificate cert;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    RankOneTerm term;
    term.split.left = {0};
    term.split.right = {1};
    term.left_coeffs.resize(n);
    term.right_coeffs.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) term.left_coeffs[i] = m.raw_at(i, pivots[k]);
    for (std::uint32_t j = 0; j < n; ++j) term.right_coeffs[j] = r.raw_at(k, j);
    cert.terms.push_back(std::move(term));
  }
  return cert;
}

// slice decomposition along the axis with the fewest nonzero slices
PrankResult greedy_upper_bound(const Tensor& t) {
  const std::uint32_t p = t.modulus(), n = t.side(), d = t.order();
  std::uint32_t best_axis = 0;
  std::size_t best_count = SIZE_MAX;
  std::vector<std::uint32_t> idx(d);
  for (std::uint32_t axis = 0; axis < d && best_count > 0; ++axis) {
    std::size_t nonzero = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      bool any = false;
      for (std::size_t flat = 0; flat < t.size() && !any; ++flat) {
        std::size_t rest = flat;
        for (std::uint32_t j = d; j-- > 0;) {
          idx[j] = static_cast<std::uint32_t>(rest % n);
          rest /= n;
        }
        any = idx[axis] == i && t.raw_flat(flat) != 0;
      }
      if (any) ++nonzero;
    }
    if (nonzero < best_count) {
      best_count = nonzero;
      best_axis = axis;
    }
  }

  PartitionSplit split;
  if (best_axis == 0) {
    split.left = {0};
    for (std::uint8_t j = 1; j < d; ++j) split.right.push_back(j);
  } else {
    for (std::uint8_t j = 0; j < d; ++j) {
      if (j == best_axis) {
        split.right = {j};
      } else {
        split.left.push_back(j);
      }
    }
  }

  RankCertificate cert;
  const std::size_t rest_len = pow_sz(n, d - 1);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::vector<std::uint32_t> slice(rest_len, 0);
    bool any = false;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      std::size_t rem = flat;
      for (std::uint32_t j = d; j-- > 0;) {
        idx[j] = static_cast<std::uint32_t>(rem % n);
        rem /= n;
      }
      if (idx[best_axis] != i) continue;
      std::size_t si = 0;
      for (std::uint32_t j = 0; j < d; ++j) {
        if (j != best_axis) si = si * n + idx[j];
      }
      slice[si] = t.raw_flat(flat);
      if (slice[si] != 0) any = true;
    }
    if (!any) continue;
    RankOneTerm term;
    term.split = split;
    std::vector<std::uint32_t> indicator(n, 0);
    indicator[i] = 1;
    if (best_axis == 0) {
      term.left_coeffs = std::move(indicator);
      term.right_coeffs = std::move(slice);
    } else {
      term.left_coeffs = std::move(slice);
      term.right_coeffs = std::move(indicator);
    }
    cert.terms.push_back(std::move(term));
  }
  return {PrankStatus::upper_bound, static_cast<std::uint32_t>(cert.terms.size()),
          std::move(cert)};
}

}  // namespace

PrankResult partition_rank(const Tensor& t, std::uint32_t r_max, const Caps& caps) {
  if (t.is_zero()) return {PrankStatus::exact, 0, {}};

  if (t.order() == 2) {
    RankCertificate cert = matrix_certificate(t);
    const auto value = static_cast<std::uint32_t>(cert.terms.size());
    return {value <= r_max ? PrankStatus::exact : PrankStatus::exceeds_rmax, value,
            std::move(cert)};
  }

  std::uint64_t space = 0;
  try {
    space = Tensor::space_size(t.modulus(), t.side(), t.order(), caps.tensor_space);
  } catch (const FeasibilityError&) {
    return greedy_upper_bound(t);
  }
  (void)space;
  const PrankTable table = PrankTable::build(t.modulus(), t.side(), t.order(), caps);
  const std::uint64_t id = t.to_id();
  const std::uint32_t value = table.prank_of_id(id);
  return {value <= r_max ? PrankStatus::exact : PrankStatus::exceeds_rmax, value,
          table.certificate_for(id)};
}

LowPrankCount count_low_prank(std::uint32_t p, std::uint32_t n, std::uint32_t d, std::uint32_t r,
                              const Caps& caps) {
  const PrankTable table = PrankTable::build(p, n, d, caps);
  const std::uint64_t count = table.count_at_most(r);

  const double bound_exp = 2.0 * std::pow(static_cast<double>(n), static_cast<double>(d - 1)) *
                           static_cast<double>(r);
  bool within = true;
  if (bound_exp * std::log2(static_cast<double>(p)) < 63.0) {
    const std::uint64_t bound =
        *checked_pow_u64(p, static_cast<std::uint64_t>(2) * pow_sz(n, d - 1) * r);
    within = count <= bound;
  }
  return {count, bound_exp, within};
}

double prank1_count_bound_logp(std::uint32_t p, std::uint32_t n, std::uint32_t d) {
  // log_p sum_a binom(d,a) p^{n^a + n^{d-a}} via max-term factoring
  double best = -1.0;
  std::vector<double> exps;
  const double logp = std::log(static_cast<double>(p));
  for (std::uint32_t a = 1; a < d; ++a) {
    const double e = static_cast<double>(pow_sz(n, a) + pow_sz(n, d - a)) +
                     std::log(static_cast<double>(binomial_u64(d, a))) / logp;
    exps.push_back(e);
    best = std::max(best, e);
  }
  double sum = 0.0;
  for (auto e : exps) sum += std::pow(static_cast<double>(p), e - best);
  return best + std::log(sum) / logp;
}

bool arank_leq_prank_exact(std::uint64_t bias_count, std::uint32_t bias_exponent,
                           std::uint32_t prank, std::uint32_t p) {
  // arank <= prank  <=>  bias >= p^-prank  <=>  count * p^prank >= p^exponent
  unsigned __int128 lhs = bias_count;
  for (std::uint32_t i = 0; i < prank; ++i) {
    lhs *= p;
    if (lhs > (static_cast<unsigned __int128>(1) << 100)) return true;  // saturates well past rhs
  }
  unsigned __int128 rhs = 1;
  for (std::uint32_t i = 0; i < bias_exponent; ++i) rhs *= p;
  return lhs >= rhs;
}

std::vector<RankAuditRow> rank_audit_table(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                           const Caps& caps, unsigned threads) {
  const PrankTable table = PrankTable::build(p, n, d, caps);
  const std::uint64_t space = table.space_size();
  std::vector<RankAuditRow> rows(space);

  parallel_chunks(0, space, clamp_threads(threads, space),
                  [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
                    for (std::uint64_t id = lo; id < hi; ++id) {
                      const Tensor t = Tensor::from_id(id, p, n, d);
                      const BiasValue b = bias_multilinear(t, caps, 1);
                      rows[id] = {id, table.prank_of_id(id),
                                  analytic_rank_from_counts(b.count, b.exponent, p), b.count,
                                  b.exponent};
                    }
                  });
  return rows;
}

void write_rank_table_csv(std::ostream& os, std::span<const RankAuditRow> rows) {
  os << "tensor_id,prank,arank,bias_num,bias_den_exp\n";
  os << std::setprecision(17);
  for (const auto& r : rows) {
    os << r.tensor_id << ',' << r.prank << ',' << r.arank << ',' << r.bias_num << ','
       << r.bias_den_exp << '\n';
  }
}

double measured_alpha(std::span<const RankAuditRow> rows) {
  double alpha = 0.0;
  for (const auto& r : rows) {
    if (r.prank == 0) continue;
    const double denom = r.arank * (std::log1p(r.arank) + 1.0);
    alpha = std::max(alpha, static_cast<double>(r.prank) / denom);
  }
  return alpha;
}

}  // namespace apfree
