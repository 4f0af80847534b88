#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "apfree/bounds.hpp"
#include "apfree/construction.hpp"
#include "apfree/feasibility.hpp"
#include "apfree/probability.hpp"
#include "apfree/prank.hpp"

// Experiment harness behind the CLI: runs subcommands against the library and
// renders reports. Reports are byte-reproducible for a fixed config except
// for the wall_time_ms field; the worker count is an execution detail and is
// never echoed.
namespace apfree::cli {

struct Assertion {
  std::string name;
  bool passed = false;
  std::string details;
};

std::uint64_t fnv1a64(std::string_view bytes);

// ---- endtoend ----

struct EndToEndConfig {
  std::uint32_t p = 5;
  std::uint32_t k = 3;
  std::uint32_t n = 2;
  std::uint64_t s = 3;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  Caps caps;
};

struct EndToEndOutcome {
  std::vector<PipelineTrial> trials;
  std::uint64_t independent_trials = 0;
  std::uint64_t verified_trials = 0;
  double independence_rate = 0.0;
  double verify_rate_among_independent = 1.0;
  std::optional<Fraction> density_min;
  std::optional<Fraction> density_max;
  double density_mean = 0.0;
  std::vector<Assertion> assertions;
  bool all_passed = true;
};

EndToEndOutcome run_endtoend(const EndToEndConfig& cfg, unsigned threads = 1);
std::string endtoend_json(const EndToEndConfig& cfg, const EndToEndOutcome& out, double wall_ms);
std::string endtoend_csv(const EndToEndOutcome& out);

// ---- rank-audit ----

struct RankAuditConfig {
  std::uint32_t p = 2;
  std::uint32_t n = 2;
  std::uint32_t d = 3;
  std::uint32_t r_max_check = 2;  // lemma count bound checked for r = 0..r_max_check
  Caps caps;
};

struct RankAuditOutcome {
  std::vector<RankAuditRow> table;
  std::uint64_t prank1_count = 0;
  std::vector<std::uint64_t> count_at_most;  // index r
  std::vector<bool> lemma_bound_ok;          // index r
  std::uint64_t prop24_violations = 0;
  double alpha_min = 0.0;
  std::vector<Assertion> assertions;
  bool all_passed = true;
};

RankAuditOutcome run_rank_audit(const RankAuditConfig& cfg, unsigned threads = 1);
std::string rank_audit_json(const RankAuditConfig& cfg, const RankAuditOutcome& out,
                            double wall_ms);
std::string rank_audit_csv(const RankAuditOutcome& out);

// ---- independence ----

struct IndependenceConfig {
  std::uint32_t p = 2;
  std::uint32_t n = 2;
  std::uint32_t k = 3;
  std::uint32_t s = 2;
  bool exact = false;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 0;
  bool with_bound = false;
  Caps caps;
};

struct IndependenceOutcome {
  IndependenceEstimate estimate;
  std::optional<IndependenceBound> bound;
  std::vector<Assertion> assertions;
  bool all_passed = true;
};

IndependenceOutcome run_independence(const IndependenceConfig& cfg);
std::string independence_json(const IndependenceConfig& cfg, const IndependenceOutcome& out,
                              double wall_ms);
std::string independence_csv(const IndependenceConfig& cfg, const IndependenceOutcome& out);

// ---- bounds ----

struct BoundsConfig {
  std::uint32_t p = 3;
  std::uint32_t k = 3;
  double alpha = 1.0;
  double beta = 1.0;
  EpsilonSpec eps;
  std::vector<std::uint64_t> n_list{9};
};

struct BoundsRow {
  std::uint64_t n;
  std::string s_max;  // decimal; may exceed 64 bits
  double r0, r, e1, e2, e1_target;
  bool e1_ok, e2_ok;
};

struct BoundsOutcome {
  std::vector<BoundsRow> rows;
  std::vector<Assertion> assertions;
  bool all_passed = true;
};

BoundsOutcome run_bounds(const BoundsConfig& cfg);
std::string bounds_json(const BoundsConfig& cfg, const BoundsOutcome& out, double wall_ms);
std::string bounds_csv(const BoundsOutcome& out);

// ---- verify-lemmas ----

struct VerifyLemmasConfig {
  std::uint64_t seed = 0;
  Caps caps;
};

struct VerifyLemmasOutcome {
  std::vector<Assertion> checks;
  bool all_passed = true;
};

VerifyLemmasOutcome run_verify_lemmas(const VerifyLemmasConfig& cfg, unsigned threads = 1);
std::string verify_lemmas_json(const VerifyLemmasConfig& cfg, const VerifyLemmasOutcome& out,
                               double wall_ms);
std::string verify_lemmas_csv(const VerifyLemmasOutcome& out);

// ---- monomials ----

struct MonomialsConfig {
  std::uint32_t n = 2;
  std::uint32_t d = 2;
};

std::string monomials_json(const MonomialsConfig& cfg, double wall_ms);
std::string monomials_csv(const MonomialsConfig& cfg);

}  // namespace apfree::cli
