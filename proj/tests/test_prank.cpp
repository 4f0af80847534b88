#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "apfree/prank.hpp"
#include "apfree/rng.hpp"

using namespace apfree;

namespace {

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

Tensor diag_cube_f2() {
  Tensor t(2, 2, 3);
  t.set(std::vector<std::uint32_t>{0, 0, 0}, 1);
  t.set(std::vector<std::uint32_t>{1, 1, 1}, 1);
  return t;
}

}  // namespace

TEST_SUITE("prank") {

TEST_CASE("rank-one enumeration in one dimension") {
  const RankOneSet set = prank1_enumerate(2, 1, 2);
  REQUIRE(set.ids.size() == 1);
  const Tensor only = Tensor::from_id(set.ids[0], 2, 1, 2);
  CHECK(only.raw_flat(0) == 1);
}

TEST_CASE("rank-one 2x2 matrices over F_2 are exactly the nine rank-1 matrices") {
  const RankOneSet set = prank1_enumerate(2, 2, 2);
  CHECK(set.ids.size() == 9);

  std::set<std::uint64_t> expected;
  for (std::uint64_t id = 0; id < 16; ++id) {
    const Tensor t = Tensor::from_id(id, 2, 2, 2);
    if (rank(as_matrix(t)) == 1) expected.insert(id);
  }
  CHECK(std::set<std::uint64_t>(set.ids.begin(), set.ids.end()) == expected);

  for (const auto id : set.ids) CHECK(id != 0);  // zero tensor never emitted
}

TEST_CASE("every enumerated term materializes to its recorded id") {
  for (const auto& [p, n, d] :
       std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{{2, 2, 3}, {3, 2, 2}}) {
    const RankOneSet set = prank1_enumerate(p, n, d);
    REQUIRE(set.terms.size() == set.ids.size());
    for (std::size_t i = 0; i < set.terms.size(); ++i) {
      CHECK(materialize(set.terms[i], p, n, d).to_id() == set.ids[i]);
      // canonical left form: first nonzero coefficient is 1
      std::size_t first = 0;
      while (first < set.terms[i].left_coeffs.size() && set.terms[i].left_coeffs[first] == 0) {
        ++first;
      }
      CHECK(set.terms[i].left_coeffs[first] == 1);
    }
  }
}

TEST_CASE("partition rank basics") {
  CHECK(partition_rank(Tensor(2, 2, 3), 8).value == 0);

  const RankOneSet set = prank1_enumerate(2, 2, 3);
  const PrankTable table = PrankTable::build(2, 2, 3);
  for (const auto id : set.ids) CHECK(table.prank_of_id(id) == 1);
}

TEST_CASE("the 2x2x2 diagonal tensor has rank 2 with a verifying certificate") {
  const Tensor t = diag_cube_f2();

  // explicit two-term certificate: (x0 y0) z0 + (x1 y1) z1
  RankCertificate byhand;
  for (std::uint32_t i = 0; i < 2; ++i) {
    RankOneTerm term;
    term.split.left = {0, 1};
    term.split.right = {2};
    term.left_coeffs.assign(4, 0);
    term.left_coeffs[i * 2 + i] = 1;
    term.right_coeffs.assign(2, 0);
    term.right_coeffs[i] = 1;
    byhand.terms.push_back(std::move(term));
  }
  CHECK(reconstruct(byhand, 2, 2, 3) == t);

  const PrankResult r = partition_rank(t, 8);
  CHECK(r.status == PrankStatus::exact);
  CHECK(r.value == 2);
  CHECK(reconstruct(r.certificate, 2, 2, 3) == t);
}

TEST_CASE("matrix oracle examples") {
  CHECK(matrix_prank_oracle(FpMatrix::identity(4, 5)) == 4);

  std::vector<FpVector> rows{FpVector({1, 2}, 5), FpVector({2, 4}, 5)};
  CHECK(matrix_prank_oracle(FpMatrix::from_rows(rows)) == 1);
}

TEST_CASE("d=2 delegation matches matrix rank with sound certificates") {
  for (std::uint64_t id = 0; id < 16; ++id) {
    const Tensor t = Tensor::from_id(id, 2, 2, 2);
    const PrankResult r = partition_rank(t, 4);
    CHECK(r.value == rank(as_matrix(t)));
    CHECK(reconstruct(r.certificate, 2, 2, 2) == t);
  }
  SplitRng rng(21, 0);
  for (int rep = 0; rep < 30; ++rep) {
    const Tensor t = Tensor::random(5, 4, 2, rng);  // beyond any exhaustive cap
    const PrankResult r = partition_rank(t, 8);
    CHECK(r.status == PrankStatus::exact);
    CHECK(r.value == rank(as_matrix(t)));
    CHECK(reconstruct(r.certificate, 5, 4, 2) == t);
  }
}

TEST_CASE("exhaustive d=2 table agrees with the matrix oracle") {
  for (const std::uint32_t p : {2u, 3u}) {
    const PrankTable table = PrankTable::build(p, 2, 2);
    for (std::uint64_t id = 0; id < table.space_size(); ++id) {
      CHECK(table.prank_of_id(id) == rank(as_matrix(Tensor::from_id(id, p, 2, 2))));
    }
  }
}

TEST_CASE("count_low_prank examples") {
  const LowPrankCount r0 = count_low_prank(2, 2, 3, 0);
  CHECK(r0.count == 1);
  CHECK(r0.within_bound);

  const RankOneSet set = prank1_enumerate(2, 2, 3);
  const LowPrankCount r1 = count_low_prank(2, 2, 3, 1);
  CHECK(r1.count == 1 + set.ids.size());
  CHECK(r1.count <= 256);
  CHECK(r1.within_bound);

  // d=2 with r >= n: everything counts and the bound still holds
  const LowPrankCount all = count_low_prank(2, 2, 2, 2);
  CHECK(all.count == 16);
  CHECK(all.within_bound);
}

TEST_CASE("certificates from the table reconstruct their tensors") {
  const PrankTable table = PrankTable::build(2, 2, 3);
  for (std::uint64_t id = 0; id < table.space_size(); ++id) {
    const RankCertificate cert = table.certificate_for(id);
    CHECK(cert.terms.size() == table.prank_of_id(id));
    CHECK(reconstruct(cert, 2, 2, 3).to_id() == id);
  }
}

TEST_CASE("analytic rank never exceeds partition rank (exact arithmetic)") {
  const PrankTable table = PrankTable::build(2, 2, 3);
  for (std::uint64_t id = 0; id < table.space_size(); ++id) {
    const BiasValue b = bias_multilinear(Tensor::from_id(id, 2, 2, 3));
    CHECK(arank_leq_prank_exact(b.count, b.exponent, table.prank_of_id(id), 2));
  }
  for (const std::uint32_t p : {2u, 3u}) {
    const std::uint64_t space = Tensor::space_size(p, 2, 2, 1 << 20);
    for (std::uint64_t id = 0; id < space; ++id) {
      const Tensor t = Tensor::from_id(id, p, 2, 2);
      const BiasValue b = bias_multilinear(t);
      CHECK(arank_leq_prank_exact(b.count, b.exponent,
                                  static_cast<std::uint32_t>(rank(as_matrix(t))), p));
    }
  }
}

TEST_CASE("measured alpha witnesses the rank comparison inequality") {
  const auto rows = rank_audit_table(2, 2, 3);
  const double alpha = measured_alpha(rows);
  CHECK(alpha > 0.0);
  for (const auto& r : rows) {
    if (r.prank == 0) continue;
    CHECK(static_cast<double>(r.prank) <=
          alpha * r.arank * (std::log1p(r.arank) + 1.0) + 1e-9);
  }
}

TEST_CASE("subadditivity on random pairs") {
  const PrankTable table = PrankTable::build(2, 2, 3);
  SplitRng rng(99, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint64_t a = rng.next_below(256), b = rng.next_below(256);
    const Tensor ta = Tensor::from_id(a, 2, 2, 3), tb = Tensor::from_id(b, 2, 2, 3);
    CHECK(table.prank_of(ta + tb) <= table.prank_of_id(a) + table.prank_of_id(b));
  }
}

TEST_CASE("beyond the cap a labeled greedy upper bound is returned") {
  SplitRng rng(17, 4);
  Caps tiny;
  tiny.tensor_space = 16;
  const Tensor t = Tensor::random(2, 2, 3, rng);
  const PrankResult r = partition_rank(t, 8, tiny);
  CHECK(r.status == PrankStatus::upper_bound);
  CHECK(reconstruct(r.certificate, 2, 2, 3) == t);
  CHECK(r.value <= 2);  // at most one term per slice of the best axis
}

TEST_CASE("order-4 rank-one enumeration is deduplicated and sound") {
  const RankOneSet set = prank1_enumerate(2, 2, 4);
  CHECK(set.ids.size() > 0);
  std::set<std::uint64_t> uniq(set.ids.begin(), set.ids.end());
  CHECK(uniq.size() == set.ids.size());
  CHECK(uniq.count(0) == 0);
  for (std::size_t i = 0; i < set.terms.size(); i += 97) {
    CHECK(materialize(set.terms[i], 2, 2, 4).to_id() == set.ids[i]);
  }
}

TEST_CASE("rank-one count stays below the union bound") {
  for (const auto& [p, n, d] :
       std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>{
           {2, 2, 2}, {2, 2, 3}, {3, 2, 2}, {3, 2, 3}}) {
    const RankOneSet set = prank1_enumerate(p, n, d);
    const double bound = prank1_count_bound_logp(p, n, d);
    CHECK(std::log(static_cast<double>(set.ids.size())) /
              std::log(static_cast<double>(p)) <=
          bound + 1e-9);
  }
}

TEST_CASE("csv export shape") {
  const auto rows = rank_audit_table(2, 2, 2);
  std::ostringstream os;
  write_rank_table_csv(os, rows);
  const std::string text = os.str();
  CHECK(text.rfind("tensor_id,prank,arank,bias_num,bias_den_exp\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 17);  // header + 16 rows
}

}  // TEST_SUITE
