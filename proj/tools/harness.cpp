#include "harness.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include <json.hpp>

#include "apfree/bounds.hpp"
#include "apfree/serialize.hpp"
#include "apfree/version.hpp"

namespace apfree::cli {

using nlohmann::ordered_json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

ordered_json assertions_json(const std::vector<Assertion>& checks) {
  ordered_json failures = ordered_json::array();
  bool all = true;
  for (const auto& a : checks) {
    if (!a.passed) {
      all = false;
      failures.push_back({{"name", a.name}, {"details", a.details}});
    }
  }
  return {{"all_passed", all}, {"failures", failures}};
}

std::string envelope(const std::string& command, ordered_json config, ordered_json results,
                     const std::vector<Assertion>& checks, double wall_ms) {
  ordered_json j;
  j["tool"] = "apfree";
  j["version"] = kVersion;
  j["monomial_order"] = kMonomialOrderTag;
  j["command"] = command;
  j["config"] = config;
  j["input_hash"] = "fnv1a64:" + hex64(fnv1a64(config.dump()));
  j["results"] = std::move(results);
  j["assertions"] = assertions_json(checks);
  j["wall_time_ms"] = wall_ms;
  return j.dump(2) + "\n";
}

ordered_json fraction_json(const Fraction& f) {
  return {{"num", f.num()}, {"den", f.den()}};
}

ordered_json vector_json(const FpVector& v) {
  return ordered_json(std::vector<std::uint32_t>(v.raw().begin(), v.raw().end()));
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void check(std::vector<Assertion>& into, const std::string& name, bool pass,
           const std::string& details = "") {
  into.push_back({name, pass, details});
}

}  // namespace

// ---------------------------------------------------------------- endtoend

EndToEndOutcome run_endtoend(const EndToEndConfig& cfg, unsigned threads) {
  if (cfg.k < 3) throw std::invalid_argument("endtoend: need k >= 3");
  if (cfg.p < cfg.k) throw std::invalid_argument("endtoend: need p >= k");
  if (cfg.n < 1) throw std::invalid_argument("endtoend: need n >= 1");
  if (cfg.s < 1) throw std::invalid_argument("endtoend: need s >= 1");
  if (cfg.trials < 1) throw std::invalid_argument("endtoend: need at least one trial");
  require_prime(cfg.p);

  EndToEndOutcome out;
  const std::uint32_t d = cfg.k - 1;
  double density_sum = 0.0;
  std::uint64_t density_count = 0;
  bool floors_ok = true, zeros_ok = true;

  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    PipelineTrial trial =
        run_pipeline_trial(cfg.p, cfg.k, cfg.n, cfg.s, cfg.seed, t, cfg.caps, threads);
    if (trial.independent) {
      ++out.independent_trials;
      if (trial.verdict && trial.verdict->no_kap) ++out.verified_trials;
      if (trial.density) {
        density_sum += trial.density->value();
        ++density_count;
        if (!out.density_min || *trial.density < *out.density_min) {
          out.density_min = trial.density;
        }
        if (!out.density_max || *out.density_max < *trial.density) {
          out.density_max = trial.density;
        }
      }
      floors_ok = floors_ok && trial.floor_ok && trial.divisibility_ok;
      zeros_ok = zeros_ok && trial.zero_in_witness;
    }
    out.trials.push_back(std::move(trial));
  }

  out.independence_rate =
      static_cast<double>(out.independent_trials) / static_cast<double>(cfg.trials);
  out.verify_rate_among_independent =
      out.independent_trials == 0
          ? 1.0
          : static_cast<double>(out.verified_trials) / static_cast<double>(out.independent_trials);
  out.density_mean = density_count == 0 ? 0.0 : density_sum / static_cast<double>(density_count);

  check(out.assertions, "no_kap_in_every_independent_trial",
        out.verified_trials == out.independent_trials,
        std::to_string(out.verified_trials) + "/" + std::to_string(out.independent_trials));
  check(out.assertions, "zero_vector_in_every_witness", zeros_ok);
  if (cfg.n > d) {
    check(out.assertions, "warning_floor_and_divisibility", floors_ok);
  }
  for (const auto& a : out.assertions) out.all_passed = out.all_passed && a.passed;
  return out;
}

std::string endtoend_json(const EndToEndConfig& cfg, const EndToEndOutcome& out, double wall_ms) {
  ordered_json config{{"p", cfg.p},         {"k", cfg.k},       {"n", cfg.n},
                      {"s", cfg.s},         {"trials", cfg.trials}, {"seed", cfg.seed},
                      {"cap_enum", cfg.caps.enum_points}, {"cap_tensor", cfg.caps.tensor_space}};

  ordered_json trials = ordered_json::array();
  for (const auto& t : out.trials) {
    ordered_json jt;
    jt["trial"] = t.trial_index;
    jt["seed"] = t.seed;
    jt["stream_base"] = t.stream_base;
    ordered_json s = ordered_json::array();
    for (const auto& v : t.difference_set.elements) s.push_back(vector_json(v));
    jt["S"] = s;
    jt["independent"] = t.independent;
    if (t.independent) {
      jt["dual_vector"] = vector_json(*t.dual);
      jt["tensor"] = nlohmann::json::parse(tensor_to_json(t.tensor->tensor()));
      jt["witness_size"] = *t.witness_size;
      jt["density"] = fraction_json(*t.density);
      jt["no_kap"] = t.verdict->no_kap;
      if (t.verdict->counterexample) {
        jt["counterexample"] = {{"x", vector_json(t.verdict->counterexample->x)},
                                {"s", vector_json(t.verdict->counterexample->s)},
                                {"s_index", t.verdict->counterexample->s_index}};
      } else {
        jt["counterexample"] = nullptr;
      }
    }
    trials.push_back(std::move(jt));
  }

  ordered_json aggregate;
  aggregate["independent_trials"] = out.independent_trials;
  aggregate["verified_trials"] = out.verified_trials;
  aggregate["independence_rate"] = out.independence_rate;
  aggregate["verify_rate_among_independent"] = out.verify_rate_among_independent;
  if (out.density_min) aggregate["density_min"] = fraction_json(*out.density_min);
  if (out.density_max) aggregate["density_max"] = fraction_json(*out.density_max);
  aggregate["density_mean"] = out.density_mean;

  return envelope("endtoend", std::move(config),
                  {{"trials", std::move(trials)}, {"aggregate", std::move(aggregate)}},
                  out.assertions, wall_ms);
}

std::string endtoend_csv(const EndToEndOutcome& out) {
  std::ostringstream os;
  os << "trial,seed,stream_base,independent,witness_size,density_num,density_den,no_kap\n";
  for (const auto& t : out.trials) {
    os << t.trial_index << ',' << t.seed << ',' << t.stream_base << ','
       << (t.independent ? 1 : 0) << ',';
    if (t.independent) {
      os << *t.witness_size << ',' << t.density->num() << ',' << t.density->den() << ','
         << (t.verdict->no_kap ? 1 : 0);
    } else {
      os << ",,,";
    }
    os << '\n';
  }
  return os.str();
}

// -------------------------------------------------------------- rank-audit

RankAuditOutcome run_rank_audit(const RankAuditConfig& cfg, unsigned threads) {
  if (cfg.n < 1) throw std::invalid_argument("rank-audit: need n >= 1");
  if (cfg.d < 2) throw std::invalid_argument("rank-audit: need d >= 2");
  require_prime(cfg.p);

  RankAuditOutcome out;
  out.table = rank_audit_table(cfg.p, cfg.n, cfg.d, cfg.caps, threads);
  out.prank1_count = prank1_enumerate(cfg.p, cfg.n, cfg.d, cfg.caps).ids.size();

  bool lemma_ok = true;
  for (std::uint32_t r = 0; r <= cfg.r_max_check; ++r) {
    const LowPrankCount c = count_low_prank(cfg.p, cfg.n, cfg.d, r, cfg.caps);
    out.count_at_most.push_back(c.count);
    out.lemma_bound_ok.push_back(c.within_bound);
    lemma_ok = lemma_ok && c.within_bound;
  }

  for (const auto& row : out.table) {
    if (!arank_leq_prank_exact(row.bias_num, row.bias_den_exp, row.prank, cfg.p)) {
      ++out.prop24_violations;
    }
  }
  out.alpha_min = measured_alpha(out.table);

  check(out.assertions, "arank_leq_prank_everywhere", out.prop24_violations == 0,
        std::to_string(out.prop24_violations) + " violations");
  check(out.assertions, "low_prank_count_bound", lemma_ok);
  check(out.assertions, "rank_zero_count_is_one", out.count_at_most[0] == 1);
  for (const auto& a : out.assertions) out.all_passed = out.all_passed && a.passed;
  return out;
}

std::string rank_audit_json(const RankAuditConfig& cfg, const RankAuditOutcome& out,
                            double wall_ms) {
  ordered_json config{{"p", cfg.p},
                      {"n", cfg.n},
                      {"d", cfg.d},
                      {"r_max_check", cfg.r_max_check},
                      {"cap_enum", cfg.caps.enum_points},
                      {"cap_tensor", cfg.caps.tensor_space}};

  ordered_json results;
  results["tensors"] = out.table.size();
  results["prank1_count"] = out.prank1_count;
  results["count_at_most"] = out.count_at_most;
  results["lemma_bound_ok"] = out.lemma_bound_ok;
  results["prop24_violations"] = out.prop24_violations;
  results["alpha_min"] = out.alpha_min;

  ordered_json table = ordered_json::array();
  for (const auto& row : out.table) {
    table.push_back({{"tensor_id", row.tensor_id},
                     {"prank", row.prank},
                     {"arank", row.arank},
                     {"bias_num", row.bias_num},
                     {"bias_den_exp", row.bias_den_exp}});
  }
  results["table"] = std::move(table);

  return envelope("rank-audit", std::move(config), std::move(results), out.assertions, wall_ms);
}

std::string rank_audit_csv(const RankAuditOutcome& out) {
  std::ostringstream os;
  write_rank_table_csv(os, out.table);
  return os.str();
}

// ------------------------------------------------------------ independence

IndependenceOutcome run_independence(const IndependenceConfig& cfg) {
  if (cfg.k < 3) throw std::invalid_argument("independence: need k >= 3");
  const std::uint32_t d = cfg.k - 1;
  IndependenceOutcome out;
  if (cfg.exact) {
    out.estimate = independence_probability_exact(cfg.p, cfg.n, d, cfg.s, cfg.caps);
  } else {
    out.estimate = independence_probability_mc(cfg.p, cfg.n, d, cfg.s, cfg.trials, cfg.seed);
  }
  if (cfg.with_bound) {
    out.bound = independence_lower_bound(cfg.p, cfg.n, d, cfg.s, cfg.caps);
    if (cfg.exact) {
      check(out.assertions, "lower_bound_holds", out.bound->bound <= out.estimate.exact,
            out.bound->bound.str() + " <= " + out.estimate.exact.str());
    }
  }
  for (const auto& a : out.assertions) out.all_passed = out.all_passed && a.passed;
  return out;
}

std::string independence_json(const IndependenceConfig& cfg, const IndependenceOutcome& out,
                              double wall_ms) {
  ordered_json config{{"p", cfg.p}, {"n", cfg.n}, {"k", cfg.k}, {"s", cfg.s},
                      {"exact", cfg.exact}, {"bound", cfg.with_bound},
                      {"cap_enum", cfg.caps.enum_points}};
  if (!cfg.exact) {
    config["trials"] = cfg.trials;
    config["seed"] = cfg.seed;
  }

  ordered_json results;
  results["mode"] = cfg.exact ? "exact" : "monte_carlo";
  if (cfg.exact) results["exact"] = fraction_json(out.estimate.exact);
  results["trials"] = out.estimate.trials;
  results["successes"] = out.estimate.successes;
  results["estimate"] = out.estimate.estimate;
  results["wilson_ci"] = {out.estimate.wilson_lo, out.estimate.wilson_hi};
  if (out.bound) {
    results["lemma_bound"] = fraction_json(out.bound->bound);
    results["max_hit_probability"] = fraction_json(out.bound->max_hit_probability);
  }
  return envelope("independence", std::move(config), std::move(results), out.assertions, wall_ms);
}

std::string independence_csv(const IndependenceConfig& cfg, const IndependenceOutcome& out) {
  std::ostringstream os;
  os << "p,n,d,s,mode,exact_num,exact_den,estimate,ci_lo,ci_hi,trials,successes,bound_num,"
        "bound_den\n";
  os << cfg.p << ',' << cfg.n << ',' << (cfg.k - 1) << ',' << cfg.s << ','
     << (cfg.exact ? "exact" : "mc") << ',';
  if (cfg.exact) {
    os << out.estimate.exact.num() << ',' << out.estimate.exact.den() << ',';
  } else {
    os << ",,";
  }
  os.precision(17);
  os << out.estimate.estimate << ',' << out.estimate.wilson_lo << ',' << out.estimate.wilson_hi
     << ',' << out.estimate.trials << ',' << out.estimate.successes << ',';
  if (out.bound) {
    os << out.bound->bound.num() << ',' << out.bound->bound.den();
  } else {
    os << ',';
  }
  os << '\n';
  return os.str();
}

// ------------------------------------------------------------------ bounds

BoundsOutcome run_bounds(const BoundsConfig& cfg) {
  if (cfg.n_list.empty()) throw std::invalid_argument("bounds: empty n list");
  BoundsOutcome out;
  const std::uint32_t d = cfg.k - 1;
  bool e2_all = true;
  for (const auto n : cfg.n_list) {
    const BoundParams params = BoundParams::make(cfg.p, n, cfg.k, cfg.alpha, cfg.beta, cfg.eps);
    BigInt s = params.s_max;
    if (s < 1) s = 1;
    const BigInt dim_uperp = binomial_big(n + d - 1, d) - (s - 1);
    const TermExponents te = term_exponents(params, dim_uperp);
    out.rows.push_back({n, params.s_max.str(), params.r0, params.r, te.e1, te.e2, te.e1_target,
                        te.e1_within_target, te.e2_small});
    e2_all = e2_all && te.e2_small;
  }
  check(out.assertions, "e2_below_minus_d_logp_n", e2_all);
  for (const auto& a : out.assertions) out.all_passed = out.all_passed && a.passed;
  return out;
}

std::string bounds_json(const BoundsConfig& cfg, const BoundsOutcome& out, double wall_ms) {
  ordered_json config{{"p", cfg.p},     {"k", cfg.k},           {"alpha", cfg.alpha},
                      {"beta", cfg.beta}, {"eps", cfg.eps.str()}, {"n_list", cfg.n_list}};
  ordered_json rows = ordered_json::array();
  for (const auto& r : out.rows) {
    rows.push_back({{"n", r.n},
                    {"s_max", r.s_max},
                    {"r0", r.r0},
                    {"r", r.r},
                    {"e1", r.e1},
                    {"e2", r.e2},
                    {"e1_target", r.e1_target},
                    {"e1_ok", r.e1_ok},
                    {"e2_ok", r.e2_ok}});
  }
  return envelope("bounds", std::move(config), {{"rows", std::move(rows)}}, out.assertions,
                  wall_ms);
}

std::string bounds_csv(const BoundsOutcome& out) {
  std::ostringstream os;
  os << "n,s_max,r0,r,e1,e2,e1_target,e1_ok,e2_ok\n";
  os.precision(17);
  for (const auto& r : out.rows) {
    os << r.n << ',' << r.s_max << ',' << r.r0 << ',' << r.r << ',' << r.e1 << ',' << r.e2 << ','
       << r.e1_target << ',' << (r.e1_ok ? 1 : 0) << ',' << (r.e2_ok ? 1 : 0) << '\n';
  }
  return os.str();
}

// ----------------------------------------------------------- verify-lemmas

namespace {

// independent float route: full character-sum average over all d-tuples
std::complex<double> bias_char_sum(const Tensor& t) {
  const std::uint32_t p = t.modulus(), n = t.side(), d = t.order();
  const Character chi(p, 1);
  const std::uint64_t pn = *checked_pow_u64(p, n);
  std::uint64_t tuples = 1;
  for (std::uint32_t j = 0; j < d; ++j) tuples *= pn;

  std::complex<double> acc{0.0, 0.0};
  std::vector<FpVector> args;
  for (std::uint64_t id = 0; id < tuples; ++id) {
    args.clear();
    std::uint64_t rest = id;
    for (std::uint32_t j = 0; j < d; ++j) {
      args.push_back(FpVector::unpack(rest % pn, n, p));
      rest /= pn;
    }
    acc += chi(t.eval(args));
  }
  return acc / static_cast<double>(tuples);
}

}  // namespace

VerifyLemmasOutcome run_verify_lemmas(const VerifyLemmasConfig& cfg, unsigned threads) {
  VerifyLemmasOutcome out;
  auto& checks = out.checks;

  // character orthogonality: (1/p) sum_a chi(a t) = [t = 0]
  {
    bool ok = true;
    for (const std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
      const Character chi(p, 1);
      for (std::uint32_t t = 0; t < p && ok; ++t) {
        std::complex<double> sum{0.0, 0.0};
        for (std::uint32_t a = 0; a < p; ++a) {
          sum += chi(static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * t % p));
        }
        sum /= static_cast<double>(p);
        const double expect = t == 0 ? 1.0 : 0.0;
        ok = std::abs(sum.real() - expect) < 1e-12 && std::abs(sum.imag()) < 1e-12;
      }
    }
    check(checks, "character_orthogonality", ok);
  }

  // Lemma 3.4 identity: exact equality for all subspaces of linear forms of
  // dimension <= 2 on F_2^2 and F_3^3
  {
    bool ok = true;
    for (const auto& [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 3}}) {
      const std::uint64_t domain = *checked_pow_u64(p, m);
      for (std::size_t dim = 0; dim <= 2 && ok; ++dim) {
        for (const auto& forms : enumerate_subspaces(p, m, dim, cfg.caps.enum_points)) {
          std::vector<FpVector> tables;
          for (const auto& f : forms.basis()) {
            FpVector table(domain, p);
            for (std::uint64_t x = 0; x < domain; ++x) {
              table.set(x, dot(f, FpVector::unpack(x, m, p)).value());
            }
            tables.push_back(std::move(table));
          }
          const SubspaceFp v = SubspaceFp::from_spanning(tables, domain, p);
          const CharacterIdentityResult r = character_identity_check(v, cfg.caps);
          ok = ok && r.equal && std::abs(r.rhs_char_sum.imag()) < 1e-12;
          if (!ok) break;
        }
      }
    }
    check(checks, "lemma_3_4_character_identity_exact", ok);
  }

  // finite difference identity Delta_s^d Q(x) = d! Q(s) on sampled symmetric
  // tensors with exhaustive (x, s)
  {
    bool ok = true;
    for (const auto& [p, d, n] :
         std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{5, 2, 2},
                                                                              {7, 3, 2}}) {
      const std::uint64_t pn = *checked_pow_u64(p, n);
      std::uint64_t dfact = 1;
      for (std::uint32_t j = 2; j <= d; ++j) dfact *= j;
      SplitRng rng(cfg.seed, 1000 + p);
      for (int rep = 0; rep < 50 && ok; ++rep) {
        const SymmetricTensor t = random_symmetric(p, n, d, rng);
        for (std::uint64_t xi = 0; xi < pn && ok; ++xi) {
          const FpVector x = FpVector::unpack(xi, n, p);
          for (std::uint64_t si = 0; si < pn && ok; ++si) {
            const FpVector s = FpVector::unpack(si, n, p);
            const Fp lhs = finite_difference_check(t, x, s);
            const Fp rhs = Fp(dfact, p) * t.diagonal_eval(s);
            ok = lhs == rhs;
          }
        }
      }
    }
    check(checks, "finite_difference_identity", ok);
  }

  // Proposition 2.4 over the exhaustive d = 3 space
  {
    const auto table = rank_audit_table(2, 2, 3, cfg.caps, threads);
    bool ok = true;
    for (const auto& row : table) {
      ok = ok && arank_leq_prank_exact(row.bias_num, row.bias_den_exp, row.prank, 2);
    }
    check(checks, "prop_2_4_arank_leq_prank", ok);
  }

  // d = 2 oracle: analytic rank equals matrix rank exactly over F_3
  {
    bool ok = true;
    for (std::uint64_t id = 0; id < 81 && ok; ++id) {
      const Tensor t = Tensor::from_id(id, 3, 2, 2);
      FpMatrix m(2, 2, 3);
      for (std::uint32_t i = 0; i < 2; ++i) {
        for (std::uint32_t j = 0; j < 2; ++j) {
          const std::uint32_t idx[2] = {i, j};
          m.set(i, j, t.at(idx).value());
        }
      }
      ok = analytic_rank(t, cfg.caps) == static_cast<double>(rank(m));
    }
    check(checks, "d2_analytic_rank_equals_matrix_rank", ok);
  }

  // float character-sum bias agrees with the exact counting path
  {
    bool ok = true;
    SplitRng rng(cfg.seed, 7);
    for (int rep = 0; rep < 100 && ok; ++rep) {
      const std::uint32_t p = rep % 2 == 0 ? 2 : 3;
      const std::uint32_t d = rep % 4 < 2 ? 2 : 3;
      const Tensor t = Tensor::random(p, 2, d, rng);
      const BiasValue exact = bias_multilinear(t, cfg.caps);
      const std::complex<double> fl = bias_char_sum(t);
      ok = std::abs(fl.real() - exact.value) < 1e-9 && std::abs(fl.imag()) < 1e-9;
    }
    check(checks, "bias_float_matches_exact_counting", ok);
  }

  // Gowers--Wolf diagonal bound on the exhaustive symmetric d = 3 space at
  // p = 5 (the lemma's regime: symmetric tensors, p > d)
  {
    bool ok = true;
    const MonomialBasis basis(2, 3);
    const Character chi(5, 1);
    const std::uint64_t total = *checked_pow_u64(5, basis.dimension());
    for (std::uint64_t id = 0; id < total && ok; ++id) {
      const SymmetricTensor t =
          symmetric_from_content(5, 2, 3, FpVector::unpack(id, basis.dimension(), 5));
      const double arank = analytic_rank(t.tensor(), cfg.caps);
      const BiasValue db = diagonal_bias(t.tensor(), chi, cfg.caps);
      ok = db.value <= std::pow(5.0, -arank / 4.0) + 1e-9;
    }
    check(checks, "gowers_wolf_diagonal_bound", ok);
  }

  // Lemma 3.3 lower bound at (p, n, d) = (2, 2, 2)
  {
    bool ok = true;
    for (std::uint32_t s = 1; s <= 3 && ok; ++s) {
      const auto exact = independence_probability_exact(2, 2, 2, s, cfg.caps);
      const auto bound = independence_lower_bound(2, 2, 2, s, cfg.caps);
      ok = bound.bound <= exact.exact;
    }
    check(checks, "lemma_3_3_lower_bound", ok);
  }

  // tail expectation split over the full symmetric space at (2, 2, 2)
  {
    const double r0 = r0_value(2, 2, 2);
    const BoundParams params = BoundParams::make(2, 2, 3, 1.0, 1.0, EpsilonSpec::model());
    const auto r = bias_split_expectation(SubspaceFp::full(3, 2), 2, 2, r0, params.r, cfg.caps,
                                          threads);
    const bool ok = r.within_bound &&
                    std::abs(r.term_low + r.term_high - r.expectation) < 1e-12 &&
                    r.tensors_enumerated == 8;
    check(checks, "bias_split_expectation_bounded", ok);
  }

  // Chevalley--Warning checks ride along one pipeline configuration with n > d
  {
    bool ok = true;
    std::uint64_t independent = 0;
    for (std::uint64_t t = 0; t < 20; ++t) {
      const PipelineTrial trial = run_pipeline_trial(5, 3, 3, 4, cfg.seed, t, cfg.caps, threads);
      if (!trial.independent) continue;
      ++independent;
      ok = ok && trial.zero_in_witness && trial.floor_ok && trial.divisibility_ok &&
           trial.verdict->no_kap;
    }
    check(checks, "pipeline_chevalley_warning_and_no_kap", ok && independent > 0,
          std::to_string(independent) + " independent trials");
  }

  for (const auto& c : checks) out.all_passed = out.all_passed && c.passed;
  return out;
}

std::string verify_lemmas_json(const VerifyLemmasConfig& cfg, const VerifyLemmasOutcome& out,
                               double wall_ms) {
  ordered_json config{{"seed", cfg.seed}, {"cap_enum", cfg.caps.enum_points}};
  ordered_json rows = ordered_json::array();
  for (const auto& c : out.checks) {
    rows.push_back({{"name", c.name}, {"passed", c.passed}, {"details", c.details}});
  }
  return envelope("verify-lemmas", std::move(config), {{"checks", std::move(rows)}}, out.checks,
                  wall_ms);
}

std::string verify_lemmas_csv(const VerifyLemmasOutcome& out) {
  std::ostringstream os;
  os << "name,passed,details\n";
  for (const auto& c : out.checks) {
    os << c.name << ',' << (c.passed ? 1 : 0) << ',' << csv_quote(c.details) << '\n';
  }
  return os.str();
}

// --------------------------------------------------------------- monomials

std::string monomials_json(const MonomialsConfig& cfg, double wall_ms) {
  const MonomialBasis basis(cfg.n, cfg.d);
  ordered_json config{{"n", cfg.n}, {"d", cfg.d}};
  ordered_json rows = ordered_json::array();
  for (std::size_t pos = 0; pos < basis.dimension(); ++pos) {
    const auto e = basis.exponents(pos);
    rows.push_back({{"position", pos},
                    {"exponents", std::vector<std::uint32_t>(e.begin(), e.end())}});
  }
  return envelope("monomials", std::move(config),
                  {{"dimension", basis.dimension()}, {"order", std::move(rows)}}, {}, wall_ms);
}

std::string monomials_csv(const MonomialsConfig& cfg) {
  const MonomialBasis basis(cfg.n, cfg.d);
  std::ostringstream os;
  os << "position,exponents\n";
  for (std::size_t pos = 0; pos < basis.dimension(); ++pos) {
    os << pos << ',';
    const auto e = basis.exponents(pos);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i) os << ';';
      os << static_cast<unsigned>(e[i]);
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace apfree::cli
