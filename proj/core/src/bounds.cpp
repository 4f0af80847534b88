#include "apfree/bounds.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "apfree/fp.hpp"

namespace apfree {

BigInt binomial_big(std::uint64_t a, std::uint64_t b) {
  if (b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (std::uint64_t i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

double log_base_p(std::uint32_t p, std::uint64_t n) {
  require_prime(p);
  if (n == 0) throw std::invalid_argument("log_base_p: n must be positive");
  // exact integer exponent when n is a power of p
  std::uint64_t m = n;
  std::uint32_t j = 0;
  while (m % p == 0) {
    m /= p;
    ++j;
  }
  if (m == 1) return static_cast<double>(j);
  return std::log(static_cast<double>(n)) / std::log(static_cast<double>(p));
}

double EpsilonSpec::operator()(double x) const {
  switch (mode) {
    case Mode::zero:
      return 0.0;
    case Mode::constant:
      return constant;
    case Mode::model:
      break;
  }
  // x^{1+eps(x)} = x (log(1+x)+1); pinned to 1 below e where the form degenerates
  if (x <= std::exp(1.0)) return 1.0;
  return std::log(std::log1p(x) + 1.0) / std::log(x);
}

std::string EpsilonSpec::str() const {
  switch (mode) {
    case Mode::zero:
      return "zero";
    case Mode::constant:
      return "const:" + std::to_string(constant);
    case Mode::model:
      return "model";
  }
  return "model";
}

namespace {

BigInt bigint_ceil(long double x) {
  if (x <= 0.0L) return 0;
  const long double c = std::ceil(x);
  if (c >= 1e30L) throw std::overflow_error("threshold term out of supported range");
  // 64-bit mantissa represents integers exactly up to 2^64; split for headroom
  constexpr long double kChunk = 18446744073709551616.0L;  // 2^64
  if (c < kChunk) return BigInt(static_cast<std::uint64_t>(c));
  long double hi = std::floor(c / kChunk);
  long double lo = c - hi * kChunk;
  if (lo < 0.0L) {
    hi -= 1.0L;
    lo += kChunk;
  }
  if (lo >= kChunk) {
    hi += 1.0L;
    lo -= kChunk;
  }
  return (BigInt(static_cast<std::uint64_t>(hi)) << 64) + BigInt(static_cast<std::uint64_t>(lo));
}

}  // namespace

BigInt threshold_s(std::uint32_t p, std::uint64_t n, std::uint32_t k, double beta,
                   const EpsilonSpec& eps) {
  require_prime(p);
  if (k < 3) throw std::invalid_argument("threshold_s: need k >= 3");
  if (p < k) throw std::invalid_argument("threshold_s: need p >= k");
  if (n < 2) throw std::invalid_argument("threshold_s: need n >= 2");
  if (beta < 0.0) throw std::invalid_argument("threshold_s: beta must be nonnegative");

  const BigInt binom = binomial_big(n + k - 2, k - 1);
  const long double lg = static_cast<long double>(log_base_p(p, n));
  long double npow = 1.0L;
  for (std::uint32_t i = 0; i + 2 < k; ++i) npow *= static_cast<long double>(n);
  const long double term = static_cast<long double>(beta) *
                           std::pow(lg, 1.0L + static_cast<long double>(eps(static_cast<double>(n)))) *
                           npow;
  // floor(binom - term) = binom - ceil(term); exact when term is integral
  const BigInt sub = bigint_ceil(term);
  if (sub >= binom) return 0;
  return binom - sub;
}

double r0_value(std::uint32_t p, std::uint64_t n, std::uint32_t d) {
  if (d < 2 || d > 30) throw std::invalid_argument("r0_value: unsupported order");
  const double factor = static_cast<double>(d) * std::pow(2.0, static_cast<double>(d - 1)) + 1.0;
  return factor * log_base_p(p, n);
}

BoundParams BoundParams::make(std::uint32_t p, std::uint64_t n, std::uint32_t k, double alpha,
                              double beta, const EpsilonSpec& eps) {
  if (k < 3) throw std::invalid_argument("BoundParams: need k >= 3");
  if (alpha < 1.0) throw std::invalid_argument("BoundParams: need alpha >= 1");
  BoundParams b;
  b.p = p;
  b.n = n;
  b.k = k;
  b.alpha = alpha;
  b.beta = beta;
  b.eps = eps;
  b.r0 = r0_value(p, n, k - 1);
  b.r = alpha * std::pow(b.r0, 1.0 + eps(static_cast<double>(n)));
  b.s_max = threshold_s(p, n, k, beta, eps);
  return b;
}

TermExponents term_exponents(const BoundParams& params, const BigInt& dim_uperp) {
  const std::uint32_t d = params.k - 1;
  const long double nd1 = std::pow(static_cast<long double>(params.n),
                                   static_cast<long double>(d - 1));
  const long double dim = dim_uperp.convert_to<long double>();
  const double lg = log_base_p(params.p, params.n);

  TermExponents te;
  te.e1 = static_cast<double>(2.0L * nd1 * static_cast<long double>(params.r) - dim);
  te.e2 = -params.r0 / std::pow(2.0, static_cast<double>(d - 1));
  te.e1_target = static_cast<double>(
      -nd1 * std::pow(static_cast<long double>(lg),
                      1.0L + static_cast<long double>(params.eps(static_cast<double>(params.n)))));
  te.e1_within_target = te.e1 <= te.e1_target;
  te.e2_small = te.e2 < -static_cast<double>(d) * lg;
  return te;
}

CalibrationResult calibrate_beta(std::uint32_t p, std::span<const std::uint64_t> n_range,
                                 std::uint32_t d, double alpha, const EpsilonSpec& eps,
                                 double grid_step, double beta_max) {
  if (n_range.empty()) throw std::invalid_argument("calibrate_beta: empty n range");
  if (grid_step <= 0.0) throw std::invalid_argument("calibrate_beta: grid step must be positive");
  const std::uint32_t k = d + 1;
  if (p < k) throw std::invalid_argument("calibrate_beta: need p >= d + 1");

  std::uint64_t failing_n = 0;
  double failing_gap = 0.0;
  for (double beta = grid_step; beta <= beta_max + 1e-12; beta += grid_step) {
    bool all_ok = true;
    for (const auto n : n_range) {
      const BoundParams params = BoundParams::make(p, n, k, alpha, beta, eps);
      BigInt s = params.s_max;
      if (s < 1) s = 1;
      const BigInt dim_uperp = binomial_big(n + d - 1, d) - (s - 1);
      const TermExponents te = term_exponents(params, dim_uperp);
      if (!te.e1_within_target) {
        all_ok = false;
        failing_n = n;
        failing_gap = te.e1 - te.e1_target;
        break;
      }
    }
    if (all_ok) {
      return {beta, grid_step, {n_range.begin(), n_range.end()}};
    }
  }

  std::ostringstream msg;
  msg << "calibrate_beta: no beta <= " << beta_max << " satisfies the exponent target"
      << " (last failure at n = " << failing_n << ", e1 exceeds target by " << failing_gap
      << "); the regime is too small for the asymptotic bound";
  throw std::runtime_error(msg.str());
}

}  // namespace apfree
