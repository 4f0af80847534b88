#include "apfree/construction.hpp"

#include <algorithm>
#include <stdexcept>

#include "apfree/parallel.hpp"

namespace apfree {

DifferenceSet sample_difference_set(std::uint32_t p, std::uint32_t n, std::uint64_t s,
                                    std::uint64_t seed, std::uint64_t stream_base) {
  require_prime(p);
  if (n == 0) throw std::invalid_argument("sample_difference_set: n must be positive");
  if (s == 0) throw std::invalid_argument("sample_difference_set: s must be positive");
  DifferenceSet out{p, n, seed, stream_base, {}};
  out.elements.reserve(s);
  for (std::uint64_t i = 0; i < s; ++i) {
    SplitRng rng(seed, stream_base + i);
    out.elements.push_back(sample_vector(n, p, rng));
  }
  return out;
}

VeroneseVector find_dual_vector(const DifferenceSet& s, std::uint32_t d) {
  if (d < 2) throw std::invalid_argument("find_dual_vector: order must be at least 2");
  std::vector<FpVector> images;
  images.reserve(s.elements.size());
  for (const auto& x : s.elements) images.push_back(veronese_map(x, d).entries);

  const std::size_t ambient = MonomialBasis(s.n, d).dimension();
  FpMatrix m = FpMatrix::from_rows(images);
  if (rank(std::move(m)) != images.size()) {
    throw DependentImageError("resample required: Veronese image of S is linearly dependent");
  }
  return {solve_all_ones(images, ambient, s.p), s.n, d};
}

SymmetricTensor find_tensor(const DifferenceSet& s, std::uint32_t d) {
  if (s.p <= d) throw std::invalid_argument("characteristic too small: need p >= d + 1");
  const VeroneseVector w = find_dual_vector(s, d);
  SymmetricTensor t = dual_to_symmetric(w, s.p);
  for (const auto& x : s.elements) {
    if (t.diagonal_eval(x).value() != 1) {
      throw std::logic_error("find_tensor postcondition violated: T(s,...,s) != 1");
    }
  }
  return t;
}

WitnessSet::WitnessSet(SymmetricTensor t, std::vector<std::uint64_t> m, std::uint64_t space,
                       std::vector<bool> bitmap)
    : tensor(std::move(t)),
      members(std::move(m)),
      space_size(space),
      density(members.size(), space),
      bitmap_(std::move(bitmap)) {}

WitnessSet build_witness(const SymmetricTensor& t, const Caps& caps, unsigned threads) {
  if (t.tensor().is_zero()) throw std::invalid_argument("build_witness: zero tensor");
  const std::uint32_t p = t.modulus(), n = t.side(), d = t.order();
  const std::uint64_t pn = require_enumerable("witness enumeration", p, n, caps.enum_points);

  const unsigned workers = clamp_threads(threads, pn);
  std::vector<std::vector<std::uint64_t>> partial(workers);
  std::vector<bool> bitmap(pn, false);
  parallel_chunks(0, pn, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    auto& local = partial[w];
    for (std::uint64_t id = lo; id < hi; ++id) {
      const FpVector x = FpVector::unpack(id, n, p);
      if (t.diagonal_eval(x).is_zero()) local.push_back(id);
    }
  });
  std::vector<std::uint64_t> members;
  for (auto& part : partial) {
    for (auto id : part) {
      members.push_back(id);
      bitmap[id] = true;
    }
  }

  WitnessSet a(t, std::move(members), pn, std::move(bitmap));

  // Chevalley--Warning obligations of a homogeneous degree-d zero set
  if (!a.contains_packed(0)) throw std::logic_error("witness postcondition: 0 not in A");
  if (n > d) {
    const std::uint64_t floor = *checked_pow_u64(p, n - d);
    if (a.members.size() < floor) {
      throw std::logic_error("witness postcondition: |A| below Warning floor p^{n-d}");
    }
    if (a.members.size() % p != 0) {
      throw std::logic_error("witness postcondition: |A| not divisible by p");
    }
  }
  return a;
}

KapVerdict verify_no_kap(const WitnessSet& a, const DifferenceSet& s, std::uint32_t k,
                         const Caps& caps, unsigned threads) {
  const std::uint32_t p = s.p, n = s.n;
  if (p < k) throw std::invalid_argument("verify_no_kap: need p >= k");
  if (k < 3) throw std::invalid_argument("verify_no_kap: need k >= 3");
  const std::uint64_t pn = a.space_size;
  if (s.elements.size() > 0 && pn > caps.enum_points / s.elements.size()) {
    throw FeasibilityError("k-AP verification", pn * s.elements.size(), caps.enum_points);
  }

  for (std::size_t si = 0; si < s.elements.size(); ++si) {
    const FpVector& step = s.elements[si];
    if (step.is_zero()) continue;  // proper progressions need s != 0

    const unsigned workers = clamp_threads(threads, pn);
    std::vector<std::uint64_t> found(workers, UINT64_MAX);
    parallel_chunks(0, pn, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
      std::vector<std::uint32_t> cur(n);
      for (std::uint64_t x = lo; x < hi; ++x) {
        if (!a.contains_packed(x)) continue;
        std::uint64_t rest = x;
        for (std::uint32_t i = 0; i < n; ++i) {
          cur[i] = static_cast<std::uint32_t>(rest % p);
          rest /= p;
        }
        bool all_in = true;
        for (std::uint32_t j = 1; j < k && all_in; ++j) {
          std::uint64_t id = 0;
          for (std::uint32_t i = n; i-- > 0;) {
            std::uint32_t c = cur[i] + static_cast<std::uint32_t>(
                                           static_cast<std::uint64_t>(j) * step.raw()[i] % p);
            if (c >= p) c -= p;
            id = id * p + c;
          }
          all_in = a.contains_packed(id);
        }
        if (all_in) {
          found[w] = x;
          return;  // lowest x in this chunk; chunks are ascending
        }
      }
    });
    std::uint64_t witness_x = UINT64_MAX;
    for (auto f : found) witness_x = std::min(witness_x, f);
    if (witness_x != UINT64_MAX) {
      return {false, KapCounterexample{FpVector::unpack(witness_x, n, p), step, si}};
    }
  }
  return {true, std::nullopt};
}

Fp finite_difference_check(const SymmetricTensor& t, const FpVector& x, const FpVector& s) {
  const std::uint32_t p = t.modulus(), d = t.order();
  if (p <= d) throw std::invalid_argument("finite_difference_check: need p > d");
  std::uint64_t acc = 0;
  for (std::uint32_t j = 0; j <= d; ++j) {
    std::uint64_t c = binomial_u64(d, j) % p;
    if ((d - j) % 2 == 1) c = (p - c) % p;  // (-1)^{d-j}
    const FpVector point = x + s.scaled(j);
    acc = (acc + c * t.diagonal_eval(point).value()) % p;
  }
  return Fp(acc, p);
}

PipelineTrial run_pipeline_trial(std::uint32_t p, std::uint32_t k, std::uint32_t n,
                                 std::uint64_t s, std::uint64_t seed, std::uint64_t trial_index,
                                 const Caps& caps, unsigned threads) {
  if (k < 3) throw std::invalid_argument("run_pipeline_trial: need k >= 3");
  if (p < k) throw std::invalid_argument("run_pipeline_trial: need p >= k");
  const std::uint32_t d = k - 1;

  PipelineTrial trial;
  trial.trial_index = trial_index;
  trial.seed = seed;
  trial.stream_base = trial_index * s;
  trial.difference_set = sample_difference_set(p, n, s, seed, trial.stream_base);

  try {
    trial.dual = find_dual_vector(trial.difference_set, d).entries;
    trial.independent = true;
  } catch (const DependentImageError&) {
    trial.independent = false;
    return trial;
  }

  const SymmetricTensor t = find_tensor(trial.difference_set, d);
  trial.tensor = t;

  const WitnessSet a = build_witness(t, caps, threads);
  trial.witness_size = a.members.size();
  trial.density = a.density;
  trial.zero_in_witness = a.contains_packed(0);
  if (n > d) {
    const std::uint64_t floor = *checked_pow_u64(p, n - d);
    trial.floor_ok = a.members.size() >= floor;
    trial.divisibility_ok = a.members.size() % p == 0;
  }
  trial.verdict = verify_no_kap(a, trial.difference_set, k, caps, threads);
  return trial;
}

}  // namespace apfree
