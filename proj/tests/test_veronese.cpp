#include <doctest.h>

#include <algorithm>
#include <set>

#include "apfree/veronese.hpp"

using namespace apfree;

TEST_SUITE("veronese") {

TEST_CASE("monomial order is descending lexicographic") {
  const MonomialBasis basis(2, 2);
  REQUIRE(basis.dimension() == 3);
  CHECK(basis.exponents(0)[0] == 2);
  CHECK(basis.exponents(0)[1] == 0);
  CHECK(basis.exponents(1)[0] == 1);
  CHECK(basis.exponents(1)[1] == 1);
  CHECK(basis.exponents(2)[0] == 0);
  CHECK(basis.exponents(2)[1] == 2);

  const std::vector<std::uint8_t> mid{1, 1};
  CHECK(basis.position(mid) == 1);
  CHECK(basis.representative_tuple(1) == std::vector<std::uint32_t>{0, 1});

  const MonomialBasis b33(3, 3);
  CHECK(b33.dimension() == binomial_u64(5, 3));
  for (std::size_t pos = 1; pos < b33.dimension(); ++pos) {
    CHECK(std::lexicographical_compare(b33.exponents(pos).begin(), b33.exponents(pos).end(),
                                       b33.exponents(pos - 1).begin(),
                                       b33.exponents(pos - 1).end()));
  }
}

TEST_CASE("binomials and multinomials") {
  CHECK(binomial_u64(10, 2) == 45);
  CHECK(binomial_u64(4, 3) == 4);
  CHECK(binomial_u64(3, 5) == 0);
  CHECK_THROWS_AS(binomial_u64(1000, 500), std::overflow_error);

  CHECK(multinomial_u64(2, std::vector<std::uint8_t>{1, 1}) == 2);
  CHECK(multinomial_u64(3, std::vector<std::uint8_t>{1, 1, 1}) == 6);
  CHECK(multinomial_u64(3, std::vector<std::uint8_t>{2, 0, 1}) == 3);
  CHECK_THROWS_AS(multinomial_u64(3, std::vector<std::uint8_t>{1, 1}), std::invalid_argument);
}

TEST_CASE("veronese map examples") {
  const VeroneseVector v = veronese_map(FpVector({1, 2}, 5), 2);
  CHECK(v.entries == FpVector({1, 2, 4}, 5));

  CHECK(veronese_map(FpVector(3, 5), 2).entries.is_zero());

  const VeroneseVector w = veronese_map(FpVector({2}, 7), 3);
  CHECK(w.entries == FpVector({1}, 7));
}

TEST_CASE("symmetric_to_dual examples") {
  {
    Tensor t(5, 2, 2);
    t.set(std::vector<std::uint32_t>{0, 0}, 1);
    t.set(std::vector<std::uint32_t>{1, 1}, 1);
    CHECK(symmetric_to_dual(SymmetricTensor(t)).entries == FpVector({1, 0, 1}, 5));
  }
  {
    Tensor t(5, 2, 2);
    t.set(std::vector<std::uint32_t>{0, 1}, 1);
    t.set(std::vector<std::uint32_t>{1, 0}, 1);
    CHECK(symmetric_to_dual(SymmetricTensor(t)).entries == FpVector({0, 2, 0}, 5));
  }
  CHECK(symmetric_to_dual(SymmetricTensor(Tensor(5, 2, 2))).entries.is_zero());
}

TEST_CASE("dual round trips") {
  SplitRng rng(4, 0);
  for (int rep = 0; rep < 200; ++rep) {
    const SymmetricTensor t = random_symmetric(5, 3, 2, rng);
    const VeroneseVector v = symmetric_to_dual(t);
    CHECK(dual_to_symmetric(v, 5) == t);
    CHECK(symmetric_to_dual(dual_to_symmetric(v, 5)).entries == v.entries);
  }

  const SymmetricTensor id2 = dual_to_symmetric({FpVector({1, 0, 1}, 5), 2, 2}, 5);
  Tensor expect(5, 2, 2);
  expect.set(std::vector<std::uint32_t>{0, 0}, 1);
  expect.set(std::vector<std::uint32_t>{1, 1}, 1);
  CHECK(id2.tensor() == expect);

  CHECK_THROWS_WITH_AS(dual_to_symmetric({FpVector({1, 0, 1}, 2), 2, 2}, 2),
                       "characteristic too small: need p > d", std::invalid_argument);
}

TEST_CASE("defining identity <v_T, phi_d(x)> = T(x,...,x), exhaustive in x") {
  SplitRng rng(5, 0);
  for (const std::uint32_t p : {3u, 5u}) {
    for (const std::uint32_t n : {1u, 2u, 3u}) {
      for (const std::uint32_t d : {2u, 3u}) {
        if (p <= d) continue;
        for (int rep = 0; rep < 5; ++rep) {
          const SymmetricTensor t = random_symmetric(p, n, d, rng);
          const VeroneseVector vt = symmetric_to_dual(t);
          const std::uint64_t pn = *checked_pow_u64(p, n);
          for (std::uint64_t id = 0; id < pn; ++id) {
            const FpVector x = FpVector::unpack(id, n, p);
            CHECK(dot(vt.entries, veronese_map(x, d).entries) == t.diagonal_eval(x));
          }
        }
      }
    }
  }
}

TEST_CASE("symmetric tensor space has the monomial dimension") {
  // content coordinates are a bijection at p = 2, n = 2, d = 2: 2^3 tensors
  const MonomialBasis basis(2, 2);
  CHECK(basis.dimension() == 3);
  std::set<std::uint64_t> ids;
  for (std::uint64_t c = 0; c < 8; ++c) {
    ids.insert(symmetric_from_content(2, 2, 2, FpVector::unpack(c, 3, 2)).tensor().to_id());
  }
  CHECK(ids.size() == 8);
}

TEST_CASE("degree-d homogeneity of the map") {
  for (const std::uint32_t p : {2u, 3u, 5u}) {
    for (const std::uint32_t d : {1u, 2u, 3u}) {
      const std::uint64_t pn = *checked_pow_u64(p, 2u);
      for (std::uint64_t id = 0; id < pn; ++id) {
        const FpVector x = FpVector::unpack(id, 2, p);
        for (std::uint32_t c = 0; c < p; ++c) {
          const FpVector lhs = veronese_map(x.scaled(c), d).entries;
          const FpVector rhs = veronese_map(x, d).entries.scaled(mod_pow(c, d, p));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("image independence examples") {
  const std::vector<FpVector> good{FpVector({1, 0}, 5), FpVector({0, 1}, 5)};
  CHECK(image_independence(good, 2));

  const std::vector<FpVector> with_zero{FpVector({1, 0}, 5), FpVector(2, 5)};
  CHECK_FALSE(image_independence(with_zero, 2));

  const std::vector<FpVector> repeated{FpVector({1, 1}, 5), FpVector({1, 1}, 5)};
  CHECK_FALSE(image_independence(repeated, 2));
}

}  // TEST_SUITE
