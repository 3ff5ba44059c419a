#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "qdec/bp.hpp"
#include "qdec/oracle.hpp"
#include "qdec/osd.hpp"

using namespace qdec;

TEST_CASE("coset_min examples") {
  SUBCASE("two-element coset") {
    const BitMatrix h = BitMatrix::from_rows({"110", "011"});
    const auto r = oracle::coset_min(h, BitVector::from_string("10"), {1.0, 2.0, 3.0});
    CHECK(r.minimum_cost == doctest::Approx(1.0));
    CHECK(r.argmin.to_string() == "100");
    CHECK(r.enumerated == 2);
  }
  SUBCASE("full column rank: singleton coset") {
    const auto r = oracle::coset_min(BitMatrix::identity(3), BitVector(3), {1.0, 1.0, 1.0});
    CHECK(r.minimum_cost == 0.0);
    CHECK_FALSE(r.argmin.any());
    CHECK(r.enumerated == 1);
  }
  SUBCASE("ties resolve to the lexicographically smallest error") {
    // Kernel {00, 11} with equal llrs: coset of s=1 is {10, 01}, same cost.
    const BitMatrix h = BitMatrix::from_rows({"11"});
    const auto r = oracle::coset_min(h, BitVector::from_string("1"), {2.0, 2.0});
    CHECK(r.minimum_cost == doctest::Approx(2.0));
    CHECK(r.argmin.to_string() == "01");  // first bit 0 beats first bit 1
  }
}

TEST_CASE("coset_min refuses oversized kernels") {
  const BitMatrix h(1, 30);  // zero matrix: kernel dimension 30
  CHECK_THROWS_WITH_AS(oracle::coset_min(h, BitVector(1), std::vector<double>(30, 1.0)),
                       doctest::Contains("exceeds"), std::invalid_argument);
}

TEST_CASE("min_cost_basis examples") {
  SUBCASE("three candidate bases") {
    const BitMatrix m = BitMatrix::from_rows({"110", "011"});
    const auto r = oracle::min_cost_basis(m, {1.0, 2.0, 3.0});
    CHECK(r.minimum_cost == doctest::Approx(3.0));
    CHECK(r.argmin.to_string() == "110");  // columns {0,1}
    CHECK(r.enumerated == 3);
  }
  SUBCASE("identity: the unique basis is everything") {
    const auto r = oracle::min_cost_basis(BitMatrix::identity(3), {1.0, 2.0, 3.0});
    CHECK(r.minimum_cost == doctest::Approx(6.0));
    CHECK(r.argmin.to_string() == "111");
  }
  SUBCASE("zero columns never join a basis") {
    const BitMatrix m = BitMatrix::from_rows({"101", "000"});
    const auto r = oracle::min_cost_basis(m, {5.0, 1.0, 2.0});
    CHECK_FALSE(r.argmin.get(1));
    CHECK(r.minimum_cost == doctest::Approx(2.0));  // column 2 alone spans
  }
}

TEST_CASE("min_cost_basis refuses oversized inputs") {
  const BitMatrix m(2, 21);
  CHECK_THROWS_AS(oracle::min_cost_basis(m, std::vector<double>(21, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("oracle minimum lower-bounds every osd variant") {
  std::mt19937_64 rng(97);
  for (int trial = 0; trial < 25; ++trial) {
    const auto inst = qdec::test::random_instance(rng, 6, 12, 8);
    const auto llrs = prior_llrs(inst.model);
    const BaseSolution base =
        osd0(inst.model, inst.syndrome, llrs, OrderingConvention::ConfidenceAscendingWithPreflip);
    const auto best =
        oracle::coset_min(inst.model.h_dec, base.preflip.adjusted_syndrome, base.llrs);
    CHECK(base.base_cost >= best.minimum_cost - 1e-9);
    if (base.k() >= 2) {
      CHECK(osd_w(base, 2).candidate.cost >= best.minimum_cost - 1e-9);
      CHECK(osd_cs(base, 2).candidate.cost >= best.minimum_cost - 1e-9);
      CHECK(bf_osd(base, {.budget = 3}).candidate.cost >= best.minimum_cost - 1e-9);
    }
  }
}
