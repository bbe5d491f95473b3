#include <doctest.h>

#include "fairdiv/matching.hpp"
#include "fairdiv/oracle.hpp"
#include "support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

TEST_SUITE("matching") {

TEST_CASE("nsw_matching on the four-agent example") {
  const Instance instance = four_agents();
  const NswMatchingResult r = nsw_matching(instance);
  CHECK(r.allocation == four_rotated());
  CHECK(nsw_objective(instance, r.allocation) == NswObjective{4, 432});

  const OracleMatching oracle = oracle_nsw_matching(instance);
  CHECK(oracle.positive_count == 4);
  CHECK(oracle.product == 432);
  CHECK(oracle.assignment == std::vector<Item>{2, 0, 1, 3});
}

TEST_CASE("single agent takes its best item") {
  const Instance instance = make_instance({{5, 9}});
  const NswMatchingResult r = nsw_matching(instance);
  CHECK(r.allocation == Allocation(2, {{1}}));
  CHECK(oracle_nsw_matching(instance).product == 9);
}

TEST_CASE("two-agent example matching has product 15") {
  const Instance instance = two_agents();
  const NswMatchingResult r = nsw_matching(instance);
  CHECK(nsw_objective(instance, r.allocation).product == 15);
  CHECK(oracle_nsw_matching(instance).product == 15);
  const auto& b0 = r.allocation.bundle(0);
  const auto& b1 = r.allocation.bundle(1);
  CHECK(((b0 == Bundle{0} && b1 == Bundle{1}) || (b0 == Bundle{1} && b1 == Bundle{0})));
}

TEST_CASE("fewer items than agents") {
  try {
    nsw_matching(make_instance({{1}, {2}}));
    FAIL("expected InstanceTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InstanceTooSmall);
  }
}

TEST_CASE("verify_nsw_certificate") {
  CHECK_FALSE(verify_nsw_certificate(four_agents(), four_identity()));
  CHECK(verify_nsw_certificate(four_agents(), four_rotated()));
  CHECK(verify_nsw_certificate(make_instance({{5, 9}}), Allocation(2, {{1}})));
  CHECK_FALSE(verify_nsw_certificate(make_instance({{5, 9}}), Allocation(2, {{0}})));
  CHECK_THROWS_AS(verify_nsw_certificate(make_instance({{5, 9}}), Allocation(2, {{0, 1}})), Error);
}

TEST_CASE("repair from the identity allocation improves monotonically") {
  const Instance instance = four_agents();
  std::vector<RepairMove> moves;
  const NswMatchingResult r =
      repair_matching(instance, four_identity(), [&](const RepairMove& m) { moves.push_back(m); });
  REQUIRE_FALSE(moves.empty());
  CHECK(moves.front().kind == RepairMove::Kind::Cycle);
  CHECK(moves.front().agents == std::vector<Agent>{0, 2, 1});
  for (const auto& m : moves) CHECK(m.before < m.after);
  CHECK(verify_nsw_certificate(instance, r.allocation));
  CHECK(nsw_objective(instance, r.allocation).product == 432);
}

TEST_CASE("path move swaps in a better pool item") {
  const Instance instance = make_instance({{5, 9}});
  std::vector<RepairMove> moves;
  const NswMatchingResult r = repair_matching(instance, Allocation(2, {{0}}),
                                              [&](const RepairMove& m) { moves.push_back(m); });
  REQUIRE(moves.size() == 1);
  CHECK(moves[0].kind == RepairMove::Kind::Path);
  CHECK(moves[0].taken == Item{1});
  CHECK(moves[0].released == Item{0});
  CHECK(r.allocation == Allocation(2, {{1}}));
}

TEST_CASE("all-zero valuations") {
  const Instance instance = make_instance({{0, 0, 0}, {0, 0, 0}});
  const NswMatchingResult r = nsw_matching(instance);
  CHECK(nsw_objective(instance, r.allocation) == NswObjective{0, 1});
  const OracleMatching oracle = oracle_nsw_matching(instance);
  CHECK(oracle.positive_count == 0);
  CHECK(oracle.product == 1);
}

TEST_CASE("float matching gives one distinct item per agent") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    const Instance instance = random_instance(rng, 1, 6, 1, 10);
    const Allocation a = float_log_matching(instance);
    CHECK(a.agent_count() == instance.agent_count());
    for (Agent i = 0; i < a.agent_count(); ++i) CHECK(a.bundle(i).size() == 1);
  }
}

TEST_CASE("matching result ranks match the certificate") {
  std::mt19937_64 rng(17);
  for (int t = 0; t < 100; ++t) {
    const Instance instance = random_instance(rng, 1, 5, 1, 8, 20);
    const NswMatchingResult r = nsw_matching(instance);
    CHECK(verify_nsw_certificate(instance, r.allocation));
    for (Agent i = 0; i < instance.agent_count(); ++i) {
      CHECK(r.ranks.ranks[i] == oracle_envy_rank(instance, r.allocation, i));
    }
  }
}

}
