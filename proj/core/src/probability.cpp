#include "apfree/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "apfree/parallel.hpp"
#include "apfree/rng.hpp"

namespace apfree {

std::pair<double, double> wilson_interval(std::uint64_t successes, std::uint64_t trials,
                                          double z) {
  if (trials == 0) throw std::invalid_argument("wilson_interval: no trials");
  const double nn = static_cast<double>(trials);
  const double ph = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (ph + z2 / (2.0 * nn)) / denom;
  const double half = z * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn)) / denom;
  const double lo = successes == 0 ? 0.0 : std::max(0.0, center - half);
  const double hi = successes == trials ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

IndependenceEstimate independence_probability_exact(std::uint32_t p, std::uint32_t n,
                                                    std::uint32_t d, std::uint32_t s,
                                                    const Caps& caps) {
  require_prime(p);
  if (s == 0) throw std::invalid_argument("independence probability: s must be positive");
  const std::uint64_t pn = require_enumerable("vector space", p, n, caps.enum_points);
  const std::uint64_t total =
      require_enumerable("tuple enumeration", pn, s, caps.enum_points);

  // Veronese images of every vector, computed once
  std::vector<FpVector> images;
  images.reserve(pn);
  for (std::uint64_t id = 0; id < pn; ++id) {
    images.push_back(veronese_map(FpVector::unpack(id, n, p), d).entries);
  }

  std::uint64_t successes = 0;
  std::vector<FpVector> tuple;
  for (std::uint64_t t = 0; t < total; ++t) {
    tuple.clear();
    std::uint64_t rest = t;
    for (std::uint32_t i = 0; i < s; ++i) {
      tuple.push_back(images[rest % pn]);
      rest /= pn;
    }
    FpMatrix m = FpMatrix::from_rows(tuple);
    if (rank(std::move(m)) == s) ++successes;
  }

  IndependenceEstimate out;
  out.exact_mode = true;
  out.exact = Fraction(successes, total);
  out.trials = total;
  out.successes = successes;
  out.estimate = out.exact.value();
  const auto [lo, hi] = wilson_interval(successes, total);
  out.wilson_lo = lo;
  out.wilson_hi = hi;
  return out;
}

IndependenceEstimate independence_probability_mc(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                                 std::uint32_t s, std::uint64_t trials,
                                                 std::uint64_t seed) {
  require_prime(p);
  if (trials == 0) throw std::invalid_argument("independence probability: no trials");
  if (s == 0) throw std::invalid_argument("independence probability: s must be positive");

  std::uint64_t successes = 0;
  std::vector<FpVector> sample;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SplitRng rng(seed, t);
    sample.clear();
    for (std::uint32_t i = 0; i < s; ++i) sample.push_back(sample_vector(n, p, rng));
    if (image_independence(sample, d)) ++successes;
  }

  IndependenceEstimate out;
  out.exact_mode = false;
  out.trials = trials;
  out.successes = successes;
  out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  const auto [lo, hi] = wilson_interval(successes, trials);
  out.wilson_lo = lo;
  out.wilson_hi = hi;
  return out;
}

IndependenceBound independence_lower_bound(std::uint32_t p, std::uint32_t n, std::uint32_t d,
                                           std::uint32_t s, const Caps& caps) {
  require_prime(p);
  if (s == 0) throw std::invalid_argument("independence bound: s must be positive");
  const std::size_t ambient = MonomialBasis(n, d).dimension();
  if (s > ambient + 1) {
    // more vectors than the ambient dimension can ever support
    return {Fraction(0, 1), Fraction(1, 1), SubspaceFp::full(ambient, p)};
  }
  const std::uint64_t pn = require_enumerable("vector space", p, n, caps.enum_points);

  std::vector<SubspaceFp> candidates;
  try {
    candidates = enumerate_subspaces(p, ambient, s - 1, caps.enum_points);
  } catch (const FeasibilityError& e) {
    throw FeasibilityError(
        "subspace enumeration infeasible; use Monte Carlo mode (independence_probability_mc)",
        e.required(), e.cap());
  }

  std::vector<FpVector> images;
  images.reserve(pn);
  for (std::uint64_t id = 0; id < pn; ++id) {
    images.push_back(veronese_map(FpVector::unpack(id, n, p), d).entries);
  }

  std::uint64_t best_hits = 0;
  std::size_t best_index = 0;
  for (std::size_t u = 0; u < candidates.size(); ++u) {
    std::uint64_t hits = 0;
    for (const auto& img : images) {
      if (candidates[u].contains(img)) ++hits;
    }
    if (hits > best_hits) {  // ties keep the canonically least subspace
      best_hits = hits;
      best_index = u;
    }
  }

  const Fraction max_hit(best_hits, pn);
  return {max_hit.complement().pow(s), max_hit, candidates[best_index]};
}

CharacterIdentityResult character_identity_check(const SubspaceFp& value_tables,
                                                 const Caps& caps) {
  const std::uint32_t p = value_tables.modulus();
  const std::size_t domain = value_tables.ambient();
  if (domain == 0) throw std::invalid_argument("character identity: empty domain");
  const auto elements = value_tables.elements(caps.enum_points);
  const std::uint64_t vsize = elements.size();

  // left side: count points where the whole basis (hence all of V) vanishes
  std::uint64_t lhs_count = 0;
  for (std::size_t x = 0; x < domain; ++x) {
    bool zero = true;
    for (const auto& b : value_tables.basis()) {
      if (b.raw()[x] != 0) {
        zero = false;
        break;
      }
    }
    if (zero) ++lhs_count;
  }

  // right side: per-point histogram of v(x) over all v in V; the histogram
  // is concentrated at 0 or uniform, which makes the character sum exact
  std::vector<std::vector<std::uint64_t>> hist(domain, std::vector<std::uint64_t>(p, 0));
  for (const auto& v : elements) {
    for (std::size_t x = 0; x < domain; ++x) ++hist[x][v.raw()[x]];
  }

  const Character chi(p, 1);
  std::complex<double> char_sum{0.0, 0.0};
  std::uint64_t rhs_count = 0;
  for (std::size_t x = 0; x < domain; ++x) {
    for (std::uint32_t a = 0; a < p; ++a) {
      char_sum += static_cast<double>(hist[x][a]) * chi(a);
    }
    if (hist[x][0] == vsize) {
      ++rhs_count;
    } else {
      for (std::uint32_t a = 0; a < p; ++a) {
        if (hist[x][a] * p != vsize) {
          throw std::logic_error("character identity: value histogram is not a coset pattern");
        }
      }
    }
  }

  CharacterIdentityResult out;
  out.lhs = Fraction(lhs_count, domain);
  out.rhs = Fraction(rhs_count, domain);
  out.equal = out.lhs == out.rhs;
  out.rhs_char_sum = char_sum / static_cast<double>(vsize * domain);
  return out;
}

BiasSplitResult bias_split_expectation(const SubspaceFp& uperp, std::uint32_t n, std::uint32_t d,
                                       double r0, double r, const Caps& caps, unsigned threads) {
  const std::uint32_t p = uperp.modulus();
  const MonomialBasis basis(n, d);
  if (uperp.ambient() != basis.dimension()) {
    throw std::invalid_argument("bias split: ambient is not the symmetric-tensor dimension");
  }
  const auto elements = uperp.elements(caps.enum_points);
  const double half_exp = std::pow(2.0, static_cast<double>(d - 1));

  BiasSplitResult out;
  out.tensors_enumerated = elements.size();

  std::vector<double> aranks(elements.size(), 0.0);
  parallel_chunks(0, elements.size(), clamp_threads(threads, elements.size()),
                  [&](unsigned, std::uint64_t lo, std::uint64_t hi) {
                    for (std::uint64_t i = lo; i < hi; ++i) {
                      const SymmetricTensor t = symmetric_from_content(p, n, d, elements[i]);
                      aranks[i] = analytic_rank(t.tensor(), caps, 1);
                    }
                  });

  for (const double a : aranks) {
    const double weight = std::pow(static_cast<double>(p), -a / half_exp);
    out.expectation += weight;
    if (a <= r0) {
      out.term_low += weight;
      ++out.low_count;
    } else {
      out.term_high += weight;
      ++out.high_count;
    }
  }
  const double count = static_cast<double>(elements.size());
  out.expectation /= count;
  out.term_low /= count;
  out.term_high /= count;

  out.bound_term1_logp =
      2.0 * std::pow(static_cast<double>(n), static_cast<double>(d - 1)) * r -
      static_cast<double>(uperp.dim());
  out.bound_term2_logp = -r0 / half_exp;
  auto safe_pow = [&](double e) {
    return e >= 0.0 ? std::numeric_limits<double>::infinity()
                    : std::pow(static_cast<double>(p), e);
  };
  out.within_bound =
      out.expectation <= safe_pow(out.bound_term1_logp) + safe_pow(out.bound_term2_logp) + 1e-12;
  return out;
}

}  // namespace apfree
