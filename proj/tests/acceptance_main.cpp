// Acceptance suite: one pass/fail line per criterion. Each criterion is
// self-contained, uses its stated tolerance, and must finish inside its
// stated time budget. Run all criteria or a subset:
//
//   apfree_acceptance [N ...] [--cli /path/to/apfree] [--threads T]
//
// Criterion 10 exercises the CLI binary itself and needs --cli (ctest
// passes it automatically).

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "apfree/bounds.hpp"
#include "apfree/construction.hpp"
#include "apfree/prank.hpp"
#include "apfree/probability.hpp"
#include "harness.hpp"

using namespace apfree;

namespace {

unsigned g_threads = 2;
std::string g_cli_path;

struct Criterion {
  int number;
  std::string label;
  double time_limit_s;
  std::function<bool(std::string&)> run;
};

FpMatrix as_matrix(const Tensor& t) {
  FpMatrix m(t.side(), t.side(), t.modulus());
  for (std::uint32_t i = 0; i < t.side(); ++i) {
    for (std::uint32_t j = 0; j < t.side(); ++j) {
      const std::uint32_t idx[2] = {i, j};
      m.set(i, j, t.at(idx).value());
    }
  }
  return m;
}

// ---- criterion 1: d=2 analytic rank is matrix rank, exactly -------------

bool c1_d2_oracle(std::string& detail) {
  std::uint64_t checked = 0;
  for (const auto& [p, n] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 2}, {2, 3}}) {
    const std::uint64_t space = Tensor::space_size(p, n, 2, 1 << 20);
    for (std::uint64_t id = 0; id < space; ++id) {
      const Tensor t = Tensor::from_id(id, p, n, 2);
      if (analytic_rank(t) != static_cast<double>(rank(as_matrix(t)))) {
        detail = "mismatch at p=" + std::to_string(p) + " id=" + std::to_string(id);
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " matrices, integer equality";
  return checked == 81 + 512;
}

// ---- criterion 2: analytic rank <= partition rank, exhaustively ---------

bool c2_arank_leq_prank(std::string& detail) {
  const PrankTable table = PrankTable::build(2, 2, 3);
  std::uint64_t violations = 0;
  for (std::uint64_t id = 0; id < table.space_size(); ++id) {
    const BiasValue b = bias_multilinear(Tensor::from_id(id, 2, 2, 3));
    if (!arank_leq_prank_exact(b.count, b.exponent, table.prank_of_id(id), 2)) ++violations;
  }
  detail = std::to_string(table.space_size()) + " tensors, " + std::to_string(violations) +
           " violations";
  return table.space_size() == 256 && violations == 0;
}

// ---- criterion 3: low partition-rank counting bound ----------------------

bool c3_low_prank_count(std::string& detail) {
  std::ostringstream os;
  bool ok = true;
  for (const std::uint32_t r : {0u, 1u, 2u}) {
    const LowPrankCount c = count_low_prank(2, 2, 3, r);
    const std::uint64_t bound = std::uint64_t{1} << (8 * r);  // 2^{2 n^{d-1} r}
    ok = ok && c.count <= bound && c.within_bound;
    if (r == 0) ok = ok && c.count == 1;
    os << "r=" << r << ":" << c.count << " ";
  }
  detail = os.str() + "(bounds 1, 256, 65536)";
  return ok;
}

// ---- criterion 4: diagonal bias bound (symmetric tensors, p > d) --------

bool c4_gowers_wolf(std::string& detail) {
  std::uint64_t checked = 0;
  // exhaustive d=3 regime with p > d: all 5^4 symmetric tensors on F_5^2
  {
    const MonomialBasis basis(2, 3);
    const Character chi(5);
    const std::uint64_t total = *checked_pow_u64(5, basis.dimension());
    for (std::uint64_t id = 0; id < total; ++id) {
      const SymmetricTensor t =
          symmetric_from_content(5, 2, 3, FpVector::unpack(id, basis.dimension(), 5));
      const double arank = analytic_rank(t.tensor(), {}, g_threads);
      const double bound = std::pow(5.0, -arank / 4.0);
      if (diagonal_bias(t.tensor(), chi).value > bound + 1e-9) {
        detail = "exhaustive violation at id=" + std::to_string(id);
        return false;
      }
      ++checked;
    }
  }
  // 1000 seeded random symmetric tensors, p in {3,5}, n <= 4, d in {2,3}
  SplitRng rng(20240817, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::uint32_t d = i % 3 == 2 ? 3 : 2;
    const std::uint32_t p = d == 3 ? 5 : (i % 2 == 0 ? 3 : 5);
    const std::uint32_t n = 1 + i % 4;
    const SymmetricTensor t = random_symmetric(p, n, d, rng);
    const double arank = analytic_rank(t.tensor(), {}, g_threads);
    const double bound = std::pow(static_cast<double>(p), -arank / std::pow(2.0, d - 1));
    if (diagonal_bias(t.tensor(), Character(p)).value > bound + 1e-9) {
      detail = "random violation at i=" + std::to_string(i);
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " symmetric tensors within p^(-arank/2^(d-1)) + 1e-9";
  return true;
}

// ---- criterion 5: end-to-end soundness ------------------------------------

bool c5_endtoend(std::string& detail) {
  std::ostringstream os;
  for (const auto& [p, k, n, s] :
       std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t, std::uint64_t>>{
           {5, 3, 2, 3}, {5, 3, 3, 5}, {7, 4, 2, 3}, {7, 5, 2, 2}}) {
    const std::uint32_t d = k - 1;
    std::uint64_t independent = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const PipelineTrial t = run_pipeline_trial(p, k, n, s, 424242, trial, {}, g_threads);
      if (!t.independent) continue;
      ++independent;
      if (!t.verdict->no_kap) {
        detail = "k-AP found in an independent trial";
        return false;
      }
      if (!t.zero_in_witness) {
        detail = "0 missing from a witness set";
        return false;
      }
      if (n > d && (!t.floor_ok || *t.witness_size < *checked_pow_u64(p, n - d))) {
        detail = "witness below the p^{n-d} floor";
        return false;
      }
    }
    os << "(" << p << "," << k << "," << n << "," << s << "):" << independent << " ";
  }
  detail = "independent trials per config: " + os.str() + "- zero failures";
  return true;
}

// ---- criterion 6: finite-difference identity ------------------------------

bool c6_finite_difference(std::string& detail) {
  std::uint64_t checked = 0;
  for (const auto& [p, d, n] :
       std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{5, 2, 2},
                                                                            {7, 3, 2}}) {
    std::uint64_t dfact = 1;
    for (std::uint32_t j = 2; j <= d; ++j) dfact *= j;
    const MonomialBasis basis(n, d);
    const std::uint64_t tensors = *checked_pow_u64(p, basis.dimension());
    const std::uint64_t pn = *checked_pow_u64(p, n);
    for (std::uint64_t id = 0; id < tensors; ++id) {
      const SymmetricTensor t =
          symmetric_from_content(p, n, d, FpVector::unpack(id, basis.dimension(), p));
      for (std::uint64_t xi = 0; xi < pn; ++xi) {
        const FpVector x = FpVector::unpack(xi, n, p);
        for (std::uint64_t si = 0; si < pn; ++si) {
          const FpVector s = FpVector::unpack(si, n, p);
          if (finite_difference_check(t, x, s) != Fp(dfact, p) * t.diagonal_eval(s)) {
            detail = "identity fails at tensor " + std::to_string(id);
            return false;
          }
          ++checked;
        }
      }
    }
  }
  detail = std::to_string(checked) + " (T, x, s) triples, exact equality";
  return true;
}

// ---- criterion 7: character identity for subspaces of linear forms --------

bool c7_character_identity(std::string& detail) {
  std::uint64_t checked = 0;
  for (const auto& [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 2}, {3, 3}}) {
    const std::uint64_t domain = *checked_pow_u64(p, m);
    for (std::size_t dim = 0; dim <= 2; ++dim) {
      for (const auto& forms : enumerate_subspaces(p, m, dim, 1 << 20)) {
        std::vector<FpVector> tables;
        for (const auto& f : forms.basis()) {
          FpVector table(domain, p);
          for (std::uint64_t x = 0; x < domain; ++x) {
            table.set(x, dot(f, FpVector::unpack(x, m, p)).value());
          }
          tables.push_back(std::move(table));
        }
        const auto r =
            character_identity_check(SubspaceFp::from_spanning(tables, domain, p));
        if (!r.equal || std::abs(r.rhs_char_sum.imag()) > 1e-12) {
          detail = "identity fails at p=" + std::to_string(p) + " dim=" + std::to_string(dim);
          return false;
        }
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " subspaces, exact rational equality";
  return true;
}

// ---- criterion 8: independence lower bound and Monte Carlo agreement ------

bool c8_independence_bound(std::string& detail) {
  std::ostringstream os;
  for (const std::uint32_t s : {1u, 2u, 3u}) {
    const auto exact = independence_probability_exact(2, 2, 2, s);
    const auto bound = independence_lower_bound(2, 2, 2, s);
    if (!(bound.bound <= exact.exact)) {
      detail = "bound exceeds the exact probability at s=" + std::to_string(s);
      return false;
    }
    const auto mc = independence_probability_mc(2, 2, 2, s, 100000, 31337);
    const double pe = exact.exact.value();
    const double sigma = std::sqrt(pe * (1.0 - pe) / 100000.0);
    if (std::abs(mc.estimate - pe) > 3.0 * sigma) {
      detail = "Monte Carlo outside three sigma at s=" + std::to_string(s);
      return false;
    }
    os << "s=" << s << ":" << bound.bound.str() << "<=" << exact.exact.str() << " ";
  }
  detail = os.str() + "(MC within 3 sigma)";
  return true;
}

// ---- criterion 9: bound calculator formulas --------------------------------

bool c9_bounds(std::string& detail) {
  if (threshold_s(3, 9, 3, 1.0, EpsilonSpec::zero()) != 27) {
    detail = "threshold_s(3,9,k=3,beta=1,eps=0) != 27";
    return false;
  }
  std::uint64_t points = 0;
  for (const std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (const std::uint32_t d : {2u, 3u, 4u}) {
      for (const std::uint64_t n : {2ull, 3ull, 9ull, 100ull, 10000ull, 1000000ull}) {
        const double lg = std::log(static_cast<double>(n)) / std::log(static_cast<double>(p));
        const double r0 = r0_value(p, n, d);
        const double expect_r0 = (d * std::pow(2.0, d - 1.0) + 1.0) * lg;
        if (std::abs(r0 - expect_r0) > 1e-9 * std::max(1.0, std::abs(expect_r0))) {
          detail = "r0 formula mismatch";
          return false;
        }
        const double e2 = -r0 / std::pow(2.0, d - 1.0);
        if (!(e2 < -static_cast<double>(d) * lg)) {
          detail = "e2 not below -d log_p n at p=" + std::to_string(p) +
                   " d=" + std::to_string(d) + " n=" + std::to_string(n);
          return false;
        }
        const std::uint32_t k = d + 1;
        if (p >= k) {
          const BoundParams params = BoundParams::make(p, n, k, 1.0, 1.0, EpsilonSpec::model());
          const BigInt dim = binomial_big(n + d - 1, d) / 3;
          const TermExponents te = term_exponents(params, dim);
          const double nd1 = std::pow(static_cast<double>(n), static_cast<double>(d - 1));
          const double expect_e1 = 2.0 * nd1 * params.r - dim.convert_to<double>();
          const double scale = std::max(1.0, std::abs(expect_e1));
          if (std::abs(te.e1 - expect_e1) > 1e-9 * scale ||
              std::abs(te.e2 - e2) > 1e-9 * std::max(1.0, std::abs(e2))) {
            detail = "term exponent mismatch";
            return false;
          }
        }
        ++points;
      }
    }
  }
  detail = std::to_string(points) + " grid points, threshold pin 27";
  return true;
}

// ---- criterion 10: report determinism across worker counts ----------------

int run_cli(const std::string& args, const std::filesystem::path& out) {
  const std::string cmd = "\"" + g_cli_path + "\" " + args + " --out \"" + out.string() +
                          "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string strip_timing(const std::filesystem::path& file) {
  std::ifstream is(file);
  std::ostringstream out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.find("wall_time_ms") != std::string::npos) continue;
    out << line << '\n';
  }
  return out.str();
}

bool c10_determinism(std::string& detail) {
  if (g_cli_path.empty()) {
    detail = "CLI path missing; pass --cli /path/to/apfree";
    return false;
  }
  const auto dir = std::filesystem::temp_directory_path() /
                   ("apfree_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);

  const std::vector<std::pair<std::string, std::string>> runs = {
      {"endtoend", "endtoend --p 5 --k 3 --n 2 --s 3 --trials 8 --seed 7"},
      {"endtoend_csv", "endtoend --p 5 --k 3 --n 2 --s 3 --trials 8 --seed 7 --format csv"},
      {"rank_audit", "rank-audit --p 2 --n 2 --d 3"},
      {"independence_exact", "independence --p 2 --n 2 --k 3 --s 2 --exact --bound"},
      {"independence_mc", "independence --p 3 --n 2 --k 3 --s 2 --trials 2000 --seed 5"},
      {"bounds", "bounds --p 3 --k 3 --n 9,27 --beta 1 --eps zero"},
      {"verify_lemmas", "verify-lemmas --seed 3"},
      {"monomials", "monomials --n 3 --d 3"},
  };

  for (const auto& [name, args] : runs) {
    const auto f1 = dir / (name + ".1");
    const auto f2 = dir / (name + ".2");
    const int r1 = run_cli(args + " --threads 1", f1);
    const int r2 = run_cli(args + " --threads 4", f2);
    if (r1 != 0 || r2 != 0) {
      detail = name + " exited nonzero (" + std::to_string(r1) + "," + std::to_string(r2) + ")";
      return false;
    }
    if (strip_timing(f1) != strip_timing(f2)) {
      detail = name + " differs across worker counts";
      return false;
    }
  }
  std::filesystem::remove_all(dir);
  detail = std::to_string(runs.size()) + " subcommand runs byte-identical modulo timing";
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      g_cli_path = argv[++i];
    } else if (arg == "--threads" && i + 1 < argc) {
      g_threads = static_cast<unsigned>(std::stoul(argv[++i]));
    } else {
      selected.push_back(std::stoi(arg));
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "d=2 analytic rank equals matrix rank on all 81+512 small matrices", 5.0, c1_d2_oracle},
      {2, "analytic rank <= partition rank on all 256 tensors of F_2^{2x2x2}", 120.0,
       c2_arank_leq_prank},
      {3, "count of prank<=r tensors stays below p^{2n^{d-1}r} for r=0,1,2", 120.0,
       c3_low_prank_count},
      {4, "diagonal bias <= p^{-arank/2^{d-1}} + 1e-9 (symmetric, p > d)", 300.0, c4_gowers_wolf},
      {5, "end-to-end witness sets contain no k-AP with difference in S", 600.0, c5_endtoend},
      {6, "d-th finite difference equals d!*Q(s) for all (T, x, s)", 60.0, c6_finite_difference},
      {7, "vanishing probability equals the character average, exactly", 60.0,
       c7_character_identity},
      {8, "independence probability >= (1 - max_U P[phi(x) in U])^s; MC within 3 sigma", 120.0,
       c8_independence_bound},
      {9, "bound calculator reproduces r0, e1, e2 and the threshold pin", 10.0, c9_bounds},
      {10, "reports are byte-identical across worker counts (modulo timing)", 600.0,
       c10_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.number) == selected.end()) {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.time_limit_s) {
      ok = false;
      detail += " [exceeded " + std::to_string(c.time_limit_s) + "s budget]";
    }
    std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.number,
                c.label.c_str(), secs, detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  return failures;
}
