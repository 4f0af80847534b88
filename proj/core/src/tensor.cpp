#include "apfree/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apfree/parallel.hpp"

namespace apfree {

namespace {

std::size_t pow_size(std::uint32_t n, std::uint32_t d) {
  std::size_t r = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (n != 0 && r > (std::size_t{1} << 26) / n) {
      throw std::invalid_argument("tensor coefficient box too large (n^d > 2^26)");
    }
    r *= n;
  }
  return r;
}

// out[t] = sum_i x[i] * in[i*block + t]  (mod p); contracts the first axis.
void contract_first_axis(const std::uint32_t* in, std::size_t n, std::size_t block,
                         const std::uint32_t* x, std::uint32_t p, std::uint32_t* out) {
  std::fill(out, out + block, 0u);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t c = x[i];
    if (c == 0) continue;
    const std::uint32_t* row = in + i * block;
    for (std::size_t t = 0; t < block; ++t) {
      out[t] = static_cast<std::uint32_t>((out[t] + c * row[t]) % p);
    }
  }
}

bool all_zero(const std::uint32_t* a, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

}  // namespace

Tensor::Tensor(std::uint32_t p, std::uint32_t n, std::uint32_t d) : p_(p), n_(n), d_(d) {
  require_prime(p);
  if (d < 2) throw std::invalid_argument("tensor order must be at least 2");
  if (n < 1) throw std::invalid_argument("tensor side must be positive");
  c_.assign(pow_size(n, d), 0);
}

std::size_t Tensor::flat_index(std::span<const std::uint32_t> idx) const {
  if (idx.size() != d_) throw std::invalid_argument("index arity mismatch");
  std::size_t flat = 0;
  for (std::uint32_t j = 0; j < d_; ++j) {
    if (idx[j] >= n_) throw std::out_of_range("tensor index out of range");
    flat = flat * n_ + idx[j];
  }
  return flat;
}

Fp Tensor::at(std::span<const std::uint32_t> idx) const { return Fp(c_[flat_index(idx)], p_); }

void Tensor::set(std::span<const std::uint32_t> idx, std::uint32_t residue) {
  c_[flat_index(idx)] = residue % p_;
}

void Tensor::set_flat(std::size_t flat, std::uint32_t residue) { c_.at(flat) = residue % p_; }

bool Tensor::is_zero() const { return all_zero(c_.data(), c_.size()); }

Tensor Tensor::operator+(const Tensor& o) const {
  if (p_ != o.p_ || n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("tensor shape mismatch");
  Tensor out(p_, n_, d_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    std::uint32_t s = c_[i] + o.c_[i];
    if (s >= p_) s -= p_;
    out.c_[i] = s;
  }
  return out;
}

Tensor Tensor::operator-(const Tensor& o) const {
  if (p_ != o.p_ || n_ != o.n_ || d_ != o.d_) throw std::invalid_argument("tensor shape mismatch");
  Tensor out(p_, n_, d_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out.c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p_ - o.c_[i];
  }
  return out;
}

Tensor Tensor::scaled(std::uint64_t c) const {
  const std::uint64_t cc = c % p_;
  Tensor out(p_, n_, d_);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out.c_[i] = static_cast<std::uint32_t>(cc * c_[i] % p_);
  }
  return out;
}

bool Tensor::operator==(const Tensor& o) const {
  return p_ == o.p_ && n_ == o.n_ && d_ == o.d_ && c_ == o.c_;
}

std::uint64_t Tensor::to_id() const {
  std::uint64_t id = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (id > (UINT64_MAX - c_[i]) / p_) throw std::overflow_error("tensor id overflow");
    id = id * p_ + c_[i];
  }
  return id;
}

Tensor Tensor::from_id(std::uint64_t id, std::uint32_t p, std::uint32_t n, std::uint32_t d) {
  Tensor t(p, n, d);
  for (std::size_t i = 0; i < t.c_.size(); ++i) {
    t.c_[i] = static_cast<std::uint32_t>(id % p);
    id /= p;
  }
  if (id != 0) throw std::invalid_argument("tensor id out of range");
  return t;
}

std::uint64_t Tensor::space_size(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                 std::uint64_t cap) {
  return require_enumerable("tensor space", p, pow_size(n, d), cap);
}

Tensor Tensor::random(std::uint32_t p, std::uint32_t n, std::uint32_t d, SplitRng& rng) {
  Tensor t(p, n, d);
  for (auto& c : t.c_) c = rng.next_below(p);
  return t;
}

Fp Tensor::eval(std::span<const FpVector> args) const {
  if (args.size() != d_) throw std::invalid_argument("eval: argument arity mismatch");
  for (const auto& x : args) {
    if (x.size() != n_ || x.modulus() != p_) {
      throw std::invalid_argument("eval: argument shape or modulus mismatch");
    }
  }
  std::vector<std::uint32_t> cur(c_.begin(), c_.end());
  std::vector<std::uint32_t> next;
  std::size_t len = c_.size();
  for (std::uint32_t j = 0; j < d_; ++j) {
    const std::size_t block = len / n_;
    next.assign(block, 0);
    contract_first_axis(cur.data(), n_, block, args[j].raw().data(), p_, next.data());
    cur.swap(next);
    len = block;
  }
  return Fp(cur[0], p_);
}

Fp Tensor::diagonal_eval(const FpVector& x) const {
  std::vector<FpVector> args(d_, x);
  return eval(args);
}

SymmetricTensor::SymmetricTensor(Tensor t) : t_(std::move(t)) {
  const std::uint32_t n = t_.side(), d = t_.order();
  std::vector<std::uint32_t> idx(d), sorted(d);
  for (std::size_t flat = 0; flat < t_.size(); ++flat) {
    std::size_t rest = flat;
    for (std::uint32_t j = d; j-- > 0;) {
      idx[j] = static_cast<std::uint32_t>(rest % n);
      rest /= n;
    }
    sorted = idx;
    std::sort(sorted.begin(), sorted.end());
    if (t_.raw_flat(flat) != t_.raw_flat(t_.flat_index(sorted))) {
      throw std::invalid_argument("non-symmetric input");
    }
  }
}

namespace {

// Counts prefixes (x_1..x_{d-1}) whose contraction leaves the zero linear
// form. Depth-first over packed vector ids, contracting one axis per level;
// a zero intermediate contributes its whole subtree at once.
struct KernelCounter {
  std::uint32_t p, n, d;
  std::uint64_t pn;  // p^n
  std::vector<std::vector<std::uint32_t>> buf;  // buf[j]: size n^(d-1-j)
  std::vector<std::uint32_t> x;

  KernelCounter(const Tensor& t, std::uint64_t pn_) : p(t.modulus()), n(t.side()), d(t.order()),
                                                      pn(pn_), x(t.side()) {
    std::size_t len = t.size();
    for (std::uint32_t j = 0; j + 1 < d; ++j) {
      len /= n;
      buf.emplace_back(len, 0u);
    }
  }

  void unpack(std::uint64_t id) {
    for (std::uint32_t i = 0; i < n; ++i) {
      x[i] = static_cast<std::uint32_t>(id % p);
      id /= p;
    }
  }

  std::uint64_t subtree(std::uint32_t depth) const {
    std::uint64_t r = 1;
    for (std::uint32_t j = depth; j + 1 < d; ++j) r *= pn;
    return r;
  }

  // depth = number of fixed vectors so far; src has length n^(d-depth)
  std::uint64_t count(std::uint32_t depth, const std::uint32_t* src, std::size_t len) {
    if (depth + 1 == d) return all_zero(src, len) ? 1 : 0;
    if (all_zero(src, len)) return subtree(depth);
    std::uint64_t total = 0;
    auto& out = buf[depth];
    for (std::uint64_t id = 0; id < pn; ++id) {
      unpack(id);
      contract_first_axis(src, n, len / n, x.data(), p, out.data());
      total += count(depth + 1, out.data(), out.size());
    }
    return total;
  }

  // top level restricted to a range of first-vector ids (for sharding)
  std::uint64_t count_top_range(const Tensor& t, std::uint64_t lo, std::uint64_t hi) {
    if (d == 2) {
      std::uint64_t total = 0;
      auto& out = buf[0];
      for (std::uint64_t id = lo; id < hi; ++id) {
        unpack(id);
        contract_first_axis(t.coeffs().data(), n, t.size() / n, x.data(), p, out.data());
        if (all_zero(out.data(), out.size())) ++total;
      }
      return total;
    }
    std::uint64_t total = 0;
    auto& out = buf[0];
    for (std::uint64_t id = lo; id < hi; ++id) {
      unpack(id);
      contract_first_axis(t.coeffs().data(), n, t.size() / n, x.data(), p, out.data());
      total += count(1, out.data(), out.size());
    }
    return total;
  }
};

}  // namespace

BiasValue bias_multilinear(const Tensor& t, const Caps& caps, unsigned threads) {
  const std::uint32_t p = t.modulus(), n = t.side(), d = t.order();
  const std::uint64_t prefixes =
      require_enumerable("bias enumeration", p, static_cast<std::uint64_t>(n) * (d - 1),
                         caps.enum_points);
  const std::uint64_t pn = *checked_pow_u64(p, n);

  const unsigned workers = clamp_threads(threads, pn);
  std::vector<std::uint64_t> partial(workers, 0);
  parallel_chunks(0, pn, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    KernelCounter kc(t, pn);
    partial[w] = kc.count_top_range(t, lo, hi);
  });
  std::uint64_t count = 0;
  for (auto c : partial) count += c;

  BiasValue b;
  b.kind = BiasValue::Kind::multilinear;
  b.count = count;
  b.exponent = n * (d - 1);
  b.exact = Fraction(count, prefixes);
  b.value = b.exact.value();
  b.complex_value = {b.value, 0.0};
  return b;
}

double analytic_rank_from_counts(std::uint64_t count, std::uint32_t exponent, std::uint32_t p) {
  if (count == 0) throw std::domain_error("analytic rank of zero bias");
  // factor out powers of p so integer-valued ranks stay exact
  std::uint32_t j = 0;
  std::uint64_t m = count;
  while (m % p == 0) {
    m /= p;
    ++j;
  }
  if (m == 1) return static_cast<double>(exponent) - static_cast<double>(j);
  return static_cast<double>(exponent) - static_cast<double>(j) -
         std::log(static_cast<double>(m)) / std::log(static_cast<double>(p));
}

double analytic_rank(const Tensor& t, const Caps& caps, unsigned threads) {
  const BiasValue b = bias_multilinear(t, caps, threads);
  return analytic_rank_from_counts(b.count, b.exponent, t.modulus());
}

std::vector<std::uint64_t> diagonal_histogram(const Tensor& t, const Caps& caps,
                                              unsigned threads) {
  const std::uint32_t p = t.modulus(), n = t.side(), d = t.order();
  const std::uint64_t pn = require_enumerable("diagonal enumeration", p, n, caps.enum_points);

  const unsigned workers = clamp_threads(threads, pn);
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(p, 0));
  parallel_chunks(0, pn, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint32_t> x(n);
    std::vector<std::uint32_t> cur, next;
    auto& hist = partial[w];
    for (std::uint64_t id = lo; id < hi; ++id) {
      std::uint64_t rest = id;
      for (std::uint32_t i = 0; i < n; ++i) {
        x[i] = static_cast<std::uint32_t>(rest % p);
        rest /= p;
      }
      cur.assign(t.coeffs().begin(), t.coeffs().end());
      std::size_t len = cur.size();
      for (std::uint32_t j = 0; j < d; ++j) {
        const std::size_t block = len / n;
        next.assign(block, 0);
        contract_first_axis(cur.data(), n, block, x.data(), p, next.data());
        cur.swap(next);
        len = block;
      }
      ++hist[cur[0]];
    }
  });

  std::vector<std::uint64_t> hist(p, 0);
  for (const auto& h : partial) {
    for (std::uint32_t a = 0; a < p; ++a) hist[a] += h[a];
  }
  return hist;
}

BiasValue diagonal_bias(const Tensor& t, const Character& chi, const Caps& caps,
                        unsigned threads) {
  if (chi.modulus() != t.modulus()) throw std::invalid_argument("modulus mismatch");
  const auto hist = diagonal_histogram(t, caps, threads);
  std::uint64_t total = 0;
  std::complex<double> sum{0.0, 0.0};
  for (std::uint32_t a = 0; a < t.modulus(); ++a) {
    total += hist[a];
    sum += static_cast<double>(hist[a]) * chi(a);
  }
  BiasValue b;
  b.kind = BiasValue::Kind::diagonal;
  b.complex_value = sum / static_cast<double>(total);
  b.value = std::abs(b.complex_value);
  return b;
}

}  // namespace apfree
