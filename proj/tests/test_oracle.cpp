#include <doctest.h>

#include <set>

#include "fairdiv/oracle.hpp"
#include "support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

TEST_SUITE("oracle") {

TEST_CASE("nsw enumeration over complete allocations of the two-agent example") {
  const Instance instance = two_agents();
  const OracleNswAllocations r = oracle_nsw_allocations(instance);
  CHECK(r.positive_count == 2);
  CHECK(r.product == 49);
  REQUIRE(r.maximizers.size() == 1);
  CHECK(r.maximizers.front() == two_nsw());
  CHECK(oracle_nsw_allocations_serial(instance).maximizers == r.maximizers);
  CHECK(*oracle_fairness_factor(instance, r.maximizers.front(), FairnessNotion::EFR) ==
        Rational(21, 22));
}

TEST_CASE("best factor") {
  SUBCASE("single agent") {
    const OracleFactor r = oracle_best_factor(make_instance({{1, 2, 3}}), FairnessNotion::EFR);
    CHECK_FALSE(r.factor);
    CHECK(r.witness == Allocation(3, {{0, 1, 2}}));
  }
  SUBCASE("two identical agents, two unit items, EF") {
    const OracleFactor r = oracle_best_factor(make_instance({{1, 1}, {1, 1}}), FairnessNotion::EF);
    REQUIRE(r.factor);
    CHECK(*r.factor == 1);
    CHECK(r.witness.bundle(0).size() == 1);
    CHECK(r.witness.bundle(1).size() == 1);
  }
}

TEST_CASE("serial and parallel best factor agree") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 30; ++t) {
    const Instance instance = random_instance(rng, 2, 4, 2, 6, 30);
    for (auto notion : {FairnessNotion::EF, FairnessNotion::EF1, FairnessNotion::EFX,
                        FairnessNotion::EFR}) {
      const OracleFactor p = oracle_best_factor(instance, notion);
      const OracleFactor s = oracle_best_factor_serial(instance, notion);
      CHECK(p.factor == s.factor);
      CHECK(p.witness == s.witness);
    }
  }
}

TEST_CASE("nsw matching oracle conventions") {
  CHECK(oracle_nsw_matching(make_instance({{5, 9}})).assignment == std::vector<Item>{1});
  const OracleMatching zero = oracle_nsw_matching(make_instance({{0, 0}, {0, 0}}));
  CHECK(zero.positive_count == 0);
  CHECK(zero.product == 1);
  CHECK(zero.assignment == std::vector<Item>{0, 1});
}

TEST_CASE("oracle envy ranks") {
  CHECK(oracle_envy_rank(four_agents(), four_identity(), 0) == ExtRational(Rational(3)));
  CHECK(oracle_envy_rank(four_agents(), four_rotated(), 1) == ExtRational(Rational(2)));
  const Instance flat = make_instance({{2, 1}, {1, 2}});
  CHECK(oracle_envy_rank(flat, Allocation(2, {{0}, {1}}), 1) == ExtRational(Rational(1)));
}

TEST_CASE("oracle improving cycle on a single agent") {
  CHECK_FALSE(oracle_improving_cycle(make_instance({{1, 2}}), Allocation(2, {{0}})));
}

TEST_CASE("removal expectation by enumeration") {
  CHECK(oracle_removal_expectation(two_agents(), 1, {0, 1, 2}) == Rational(22, 3));
  CHECK(oracle_removal_expectation(two_agents(), 0, {4}) == 0);
  CHECK(oracle_removal_expectation(make_instance({{4, 2}}), 0, {0, 1}) == 3);
  CHECK_THROWS_AS(oracle_removal_expectation(two_agents(), 0, {}), Error);
}

TEST_CASE("limits") {
  std::vector<std::vector<Rational>> rows(8, std::vector<Rational>(8, Rational(1)));
  const Instance big(rows);
  try {
    oracle_nsw_matching(big);
    FAIL("expected LimitExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LimitExceeded);
  }
  OracleLimits tight;
  tight.max_allocations = 10;
  CHECK_THROWS_AS(oracle_best_factor(two_agents(), FairnessNotion::EFR, tight), Error);
  OracleLimits wide;
  wide.max_agents = 8;
  CHECK(oracle_nsw_matching(big, wide).product == 1);
}

TEST_CASE("nsw maximizers are distinct complete allocations") {
  const Instance instance = make_instance({{1, 1, 1}, {1, 1, 1}});
  const OracleNswAllocations r = oracle_nsw_allocations(instance);
  // Splits of three unit items as 1+2 or 2+1: product 2 in six ways.
  CHECK(r.product == 2);
  CHECK(r.maximizers.size() == 6);
  std::set<std::vector<Bundle>> seen;
  for (const auto& a : r.maximizers) {
    CHECK(a.is_complete());
    seen.insert(a.bundles());
  }
  CHECK(seen.size() == 6);
}

}
