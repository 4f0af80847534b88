#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "apfree/version.hpp"
#include "harness.hpp"

namespace {

using namespace apfree;
using namespace apfree::cli;

double ms_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + out_path);
  os << text;
}

EpsilonSpec parse_eps(const std::string& text) {
  if (text == "model") return EpsilonSpec::model();
  if (text == "zero") return EpsilonSpec::zero();
  if (text.rfind("const:", 0) == 0) return EpsilonSpec::constant_value(std::stod(text.substr(6)));
  throw CLI::ValidationError("--eps", "expected model, zero, or const:<value>");
}

struct CommonOut {
  std::string out_path;
  std::string format = "json";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOut& c) {
  cmd->add_option("--out", c.out_path, "Write the report to this file instead of stdout");
  cmd->add_option("--format", c.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--threads", c.threads, "Worker threads for enumerations (never changes results)")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"apfree: k-AP-free witness sets over F_p^n, tensor rank experiments, and the "
               "accompanying bound calculator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(apfree::kVersion));

  EndToEndConfig ecfg;
  CommonOut ecom;
  auto* endtoend = app.add_subcommand("endtoend", "Sample S, build the witness set, verify no k-APs");
  endtoend->add_option("--p", ecfg.p, "Field characteristic (prime, >= k)")->required();
  endtoend->add_option("--k", ecfg.k, "Progression length (>= 3)")->required();
  endtoend->add_option("--n", ecfg.n, "Dimension of F_p^n")->required();
  endtoend->add_option("--s", ecfg.s, "Number of sampled differences")->required();
  endtoend->add_option("--trials", ecfg.trials, "Seeded trials")->capture_default_str();
  endtoend->add_option("--seed", ecfg.seed, "Master seed")->capture_default_str();
  endtoend->add_option("--cap-enum", ecfg.caps.enum_points, "Enumeration cap")
      ->capture_default_str();
  add_common(endtoend, ecom);

  RankAuditConfig rcfg;
  CommonOut rcom;
  auto* audit = app.add_subcommand("rank-audit", "Exhaustive prank/arank classification table");
  audit->add_option("--p", rcfg.p, "Field characteristic (prime)")->required();
  audit->add_option("--n", rcfg.n, "Side length")->required();
  audit->add_option("--d", rcfg.d, "Tensor order (>= 2)")->required();
  audit->add_option("--r-max", rcfg.r_max_check, "Check the count bound for r = 0..r_max")
      ->capture_default_str();
  audit->add_option("--cap-enum", rcfg.caps.enum_points, "Enumeration cap")->capture_default_str();
  audit->add_option("--cap-tensor", rcfg.caps.tensor_space, "Exact-prank space cap")
      ->capture_default_str();
  add_common(audit, rcom);

  IndependenceConfig icfg;
  CommonOut icom;
  auto* indep = app.add_subcommand("independence", "Veronese image independence probability");
  indep->add_option("--p", icfg.p, "Field characteristic (prime)")->required();
  indep->add_option("--n", icfg.n, "Dimension of F_p^n")->required();
  indep->add_option("--k", icfg.k, "Progression length; d = k - 1")->required();
  indep->add_option("--s", icfg.s, "Tuple size")->required();
  indep->add_flag("--exact", icfg.exact, "Exact tuple enumeration instead of Monte Carlo");
  indep->add_option("--trials", icfg.trials, "Monte Carlo trials")->capture_default_str();
  indep->add_option("--seed", icfg.seed, "Monte Carlo seed")->capture_default_str();
  indep->add_flag("--bound", icfg.with_bound, "Also maximize P[phi_d(x) in U] exhaustively");
  indep->add_option("--cap-enum", icfg.caps.enum_points, "Enumeration cap")->capture_default_str();
  add_common(indep, icom);

  BoundsConfig bcfg;
  CommonOut bcom;
  std::string eps_text = "model";
  auto* bounds = app.add_subcommand("bounds", "Threshold and tail-exponent calculator");
  bounds->add_option("--p", bcfg.p, "Field characteristic (prime, >= k)")->required();
  bounds->add_option("--k", bcfg.k, "Progression length (>= 3)")->required();
  bounds->add_option("--alpha", bcfg.alpha, "alpha_d from the rank comparison")
      ->capture_default_str();
  bounds->add_option("--beta", bcfg.beta, "beta_d in the threshold")->capture_default_str();
  bounds->add_option("--eps", eps_text, "Epsilon model: model | zero | const:<v>")
      ->capture_default_str();
  bounds->add_option("--n", bcfg.n_list, "Dimension(s) n; repeat or comma-separate")
      ->required()
      ->delimiter(',');
  add_common(bounds, bcom);

  VerifyLemmasConfig vcfg;
  CommonOut vcom;
  auto* verify = app.add_subcommand("verify-lemmas", "Identity and inequality battery");
  verify->add_option("--seed", vcfg.seed, "Seed for the sampled checks")->capture_default_str();
  verify->add_option("--cap-enum", vcfg.caps.enum_points, "Enumeration cap")
      ->capture_default_str();
  add_common(verify, vcom);

  MonomialsConfig mcfg;
  CommonOut mcom;
  auto* monomials = app.add_subcommand("monomials", "Monomial order table (position <-> exponents)");
  monomials->add_option("--n", mcfg.n, "Number of variables")->required();
  monomials->add_option("--d", mcfg.d, "Degree")->required();
  add_common(monomials, mcom);

  CLI11_PARSE(app, argc, argv);

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*endtoend) {
      const EndToEndOutcome out = run_endtoend(ecfg, ecom.threads);
      emit(ecom.format == "csv" ? endtoend_csv(out) : endtoend_json(ecfg, out, ms_since(t0)),
           ecom.out_path);
      return out.all_passed ? 0 : 1;
    }
    if (*audit) {
      const RankAuditOutcome out = run_rank_audit(rcfg, rcom.threads);
      emit(rcom.format == "csv" ? rank_audit_csv(out) : rank_audit_json(rcfg, out, ms_since(t0)),
           rcom.out_path);
      return out.all_passed ? 0 : 1;
    }
    if (*indep) {
      const IndependenceOutcome out = run_independence(icfg);
      emit(icom.format == "csv" ? independence_csv(icfg, out)
                                : independence_json(icfg, out, ms_since(t0)),
           icom.out_path);
      return out.all_passed ? 0 : 1;
    }
    if (*bounds) {
      bcfg.eps = parse_eps(eps_text);
      const BoundsOutcome out = run_bounds(bcfg);
      emit(bcom.format == "csv" ? bounds_csv(out) : bounds_json(bcfg, out, ms_since(t0)),
           bcom.out_path);
      return out.all_passed ? 0 : 1;
    }
    if (*verify) {
      const VerifyLemmasOutcome out = run_verify_lemmas(vcfg, vcom.threads);
      emit(vcom.format == "csv" ? verify_lemmas_csv(out)
                                : verify_lemmas_json(vcfg, out, ms_since(t0)),
           vcom.out_path);
      return out.all_passed ? 0 : 1;
    }
    if (*monomials) {
      emit(mcom.format == "csv" ? monomials_csv(mcfg) : monomials_json(mcfg, ms_since(t0)),
           mcom.out_path);
      return 0;
    }
  } catch (const apfree::FeasibilityError& e) {
    std::cerr << "feasibility error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
