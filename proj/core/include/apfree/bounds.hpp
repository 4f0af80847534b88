#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace apfree {

using BigInt = boost::multiprecision::cpp_int;

/// binom(a, b), exact.
BigInt binomial_big(std::uint64_t a, std::uint64_t b);

/// log_p(n); exact integer when n is a power of p, so grid identities like
/// log_3(9) = 2 survive into exact threshold arithmetic.
double log_base_p(std::uint32_t p, std::uint64_t n);

/// The o(1) exponent correction. The default models
/// x^{1+eps(x)} = x * (log(1+x) + 1) for x > e (eps = 1 below); zero and
/// constant overrides are for experiments and tests.
struct EpsilonSpec {
  enum class Mode { model, zero, constant };
  Mode mode = Mode::model;
  double constant = 0.0;

  double operator()(double x) const;
  std::string str() const;

  static EpsilonSpec model() { return {}; }
  static EpsilonSpec zero() { return {Mode::zero, 0.0}; }
  static EpsilonSpec constant_value(double c) { return {Mode::constant, c}; }
};

/// floor(binom(n+k-2, k-1) - beta (log_p n)^{1+eps(n)} n^{k-2}), clamped at 0.
BigInt threshold_s(std::uint32_t p, std::uint64_t n, std::uint32_t k, double beta,
                   const EpsilonSpec& eps);

/// r0 = (d 2^{d-1} + 1) log_p n.
double r0_value(std::uint32_t p, std::uint64_t n, std::uint32_t d);

struct BoundParams {
  std::uint32_t p = 0;
  std::uint64_t n = 0;
  std::uint32_t k = 0;  // d = k - 1
  double alpha = 1.0;
  double beta = 1.0;
  EpsilonSpec eps;
  // Derived:
  double r0 = 0.0;
  double r = 0.0;  // alpha * r0^{1+eps(n)}
  BigInt s_max;

  static BoundParams make(std::uint32_t p, std::uint64_t n, std::uint32_t k, double alpha,
                          double beta, const EpsilonSpec& eps);
};

struct TermExponents {
  double e1 = 0.0;  // 2 n^{d-1} r - dim Uperp
  double e2 = 0.0;  // -r0 / 2^{d-1}
  double e1_target = 0.0;       // -n^{d-1} (log_p n)^{1+eps(n)}
  bool e1_within_target = false;
  bool e2_small = false;        // e2 < -d log_p n, the o(n^{-d}) witness
};

/// Both exponents of the tail bound p^{e1} + p^{e2}, kept in log_p space and
/// never exponentiated when large.
TermExponents term_exponents(const BoundParams& params, const BigInt& dim_uperp);

struct CalibrationResult {
  double beta = 0.0;
  double grid_step = 0.0;
  std::vector<std::uint64_t> n_range;
};

/// Smallest grid beta such that e1 <= e1_target for every n in the range,
/// with dim Uperp = binom(n+d-1,d) - (s-1), s = max(threshold_s, 1). Throws
/// std::runtime_error with diagnostics when no grid beta suffices.
CalibrationResult calibrate_beta(std::uint32_t p, std::span<const std::uint64_t> n_range,
                                 std::uint32_t d, double alpha, const EpsilonSpec& eps,
                                 double grid_step = 0.25, double beta_max = 4096.0);

}  // namespace apfree
