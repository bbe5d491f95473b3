#include <doctest.h>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/oracle.hpp"
#include "support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

namespace {

EnvyRanks ranks_of(std::initializer_list<ExtRational> values) {
  EnvyRanks r;
  r.ranks.assign(values.begin(), values.end());
  r.predecessor.resize(r.ranks.size());
  return r;
}

ExtRational ext(long p, long q = 1) { return ExtRational(frac(p, q)); }

std::size_t count_invariants(const Trace& trace, bool pass) {
  std::size_t k = 0;
  for (const auto& e : trace) {
    if (const auto* c = std::get_if<trace::InvariantChecked>(&e)) k += c->pass == pass;
  }
  return k;
}

}  // namespace

TEST_SUITE("algorithms") {

TEST_CASE("partition_groups for EFR") {
  CHECK(partition_groups(ranks_of({ext(1), ext(1), ext(1)}), Mode::EFR).group_of ==
        std::vector<int>{3, 3, 3});
  CHECK(partition_groups(ranks_of({ext(2)}), Mode::EFR).group_of == std::vector<int>{3});
  CHECK(partition_groups(ranks_of({ext(14, 5)}), Mode::EFR).group_of == std::vector<int>{1});
  CHECK(partition_groups(ranks_of({ext(27, 10)}), Mode::EFR).group_of == std::vector<int>{2});
  CHECK(partition_groups(ranks_of({ext(201, 100)}), Mode::EFR).group_of == std::vector<int>{2});
  CHECK(partition_groups(ranks_of({ExtRational::infinity()}), Mode::EFR).group_of ==
        std::vector<int>{1});
}

TEST_CASE("partition_groups for EFX") {
  // (2r - 1)^2 against 5: 8/5 -> 121/25 < 5, 13/8 -> 81/16 > 5, 21/13 -> 841/169 < 5.
  CHECK(partition_groups(ranks_of({ext(8, 5), ext(13, 8), ext(21, 13), ext(1)}), Mode::EFX)
            .group_of == std::vector<int>{2, 1, 2, 2});
  CHECK(partition_groups(ranks_of({ExtRational::infinity()}), Mode::EFX).group_of ==
        std::vector<int>{1});
}

TEST_CASE("AgentGroups::members") {
  const AgentGroups g{Mode::EFR, {3, 1, 3, 2}};
  CHECK(g.members(3) == std::vector<Agent>{0, 2});
  CHECK(g.members(1) == std::vector<Agent>{1});
}

TEST_CASE("refinement leaves group 1 untouched") {
  const Instance instance = make_instance({{5, 1, 1}, {1, 5, 1}});
  RefinementState state{Allocation(3, {{0}, {1}}), AgentGroups{Mode::EFR, {1, 1}}, {0, 1}};
  Trace trace;
  const RefinementState after = refine_step2(instance, state, &trace);
  CHECK(after.allocation == state.allocation);
  CHECK(trace.empty());
}

TEST_CASE("two passes for group 3 interleave in order") {
  // Agent 0 ranks the pool 2 > 3 > 4 > 5; agent 1 takes item 3 in the first pass.
  const Instance instance = make_instance({{20, 1, 9, 7, 5, 3}, {1, 20, 1, 10, 1, 1}});
  RefinementState state{Allocation(6, {{0}, {1}}), AgentGroups{Mode::EFR, {3, 3}}, {0, 1}};
  Trace trace;
  const RefinementState after = refine_step2(instance, state, &trace);
  CHECK(after.allocation == Allocation(6, {{0, 2, 4}, {1, 3, 5}}));
  REQUIRE(trace.size() == 4);
  CHECK(std::get<trace::Pick>(trace[0]) == trace::Pick{0, 2, "g3-first"});
  CHECK(std::get<trace::Pick>(trace[1]) == trace::Pick{1, 3, "g3-first"});
  CHECK(std::get<trace::Pick>(trace[2]) == trace::Pick{0, 4, "g3-second"});
  CHECK(std::get<trace::Pick>(trace[3]) == trace::Pick{1, 5, "g3-second"});
}

TEST_CASE("refinement on an empty pool does nothing") {
  const Instance instance = make_instance({{1, 2}, {2, 1}});
  RefinementState state{Allocation(2, {{1}, {0}}), AgentGroups{Mode::EFR, {3, 2}}, {0, 1}};
  CHECK(refine_step2(instance, state).allocation == state.allocation);
}

TEST_CASE("EFX refinement gives group 2 one pick") {
  const Instance instance = make_instance({{5, 1, 3, 2}, {1, 5, 2, 3}});
  RefinementState state{Allocation(4, {{0}, {1}}), AgentGroups{Mode::EFX, {2, 1}}, {0, 1}};
  const RefinementState after = refine_step2(instance, state);
  CHECK(after.allocation == Allocation(4, {{0, 2}, {1}}));
}

TEST_CASE("envy-cycle elimination") {
  SUBCASE("complete input is returned as is") {
    const Allocation a(2, {{1}, {0}});
    CHECK(envy_cycle_elimination(make_instance({{1, 2}, {2, 1}}), a) == a);
  }
  SUBCASE("mutual envy swaps, then the unenvied agent picks") {
    const Instance instance = make_instance({{1, 5, 1}, {5, 1, 1}});
    Trace trace;
    const Allocation out = envy_cycle_elimination(instance, Allocation(3, {{0}, {1}}), &trace);
    CHECK(out == Allocation(3, {{1, 2}, {0}}));
    REQUIRE(trace.size() == 2);
    CHECK(std::get<trace::CycleRotated>(trace[0]).cycle == Cycle{0, 1});
    CHECK(std::get<trace::SourcePick>(trace[1]) == trace::SourcePick{0, 2});
  }
}

TEST_CASE("solve_efr on the two-agent example") {
  const Instance instance = two_agents();
  const SolveResult r = solve_efr(instance);
  // Matching {0},{1}; both agents in group 3; picks 2, 3, then 4.
  CHECK(r.allocation == Allocation(5, {{0, 2, 4}, {1, 3}}));
  REQUIRE(r.report.factor);
  CHECK(*r.report.factor == Rational(3, 2));
  CHECK(oracle_fairness_factor(instance, r.allocation, FairnessNotion::EFR) == Rational(3, 2));
  CHECK(meets_threshold(r.report, Threshold::sqrt3_minus_1()));
  CHECK(*oracle_best_factor(instance, FairnessNotion::EFR).factor >= Rational(3, 2));
  CHECK(count_invariants(r.trace, false) == 0);
  CHECK(replay_trace(r.trace) == r.allocation);
}

TEST_CASE("single agent receives everything") {
  const Instance instance = make_instance({{3, 1, 4, 1, 5}});
  for (Mode mode : {Mode::EFR, Mode::EFX}) {
    const SolveResult r = solve(instance, mode);
    CHECK(r.allocation == Allocation(5, {{0, 1, 2, 3, 4}}));
    CHECK(r.report.unbounded());
  }
}

TEST_CASE("identical valuations with one item each are unbounded") {
  const Instance instance = make_instance({{4, 7, 1}, {4, 7, 1}, {4, 7, 1}});
  for (Mode mode : {Mode::EFR, Mode::EFX}) {
    const SolveResult r = solve(instance, mode);
    for (Agent i = 0; i < 3; ++i) CHECK(r.allocation.bundle(i).size() == 1);
    CHECK(r.report.unbounded());
  }
}

TEST_CASE("solve records invariants only when checking") {
  const Instance instance = four_agents();
  const SolveResult on = solve_efx(instance, SolveOptions{true});
  const SolveResult off = solve_efx(instance, SolveOptions{false});
  CHECK(on.allocation == off.allocation);
  CHECK(count_invariants(on.trace, true) > 1);
  CHECK(count_invariants(off.trace, true) == 1);  // final-guarantee only
  CHECK(std::get<trace::InvariantChecked>(off.trace.back()).name == "final-guarantee");
}

TEST_CASE("solve rejects fewer items than agents") {
  CHECK_THROWS_AS(solve_efr(make_instance({{1}, {1}})), Error);
}

TEST_CASE("mode helpers") {
  CHECK(parse_mode("efr") == Mode::EFR);
  CHECK(parse_mode(mode_name(Mode::EFX)) == Mode::EFX);
  CHECK_THROWS_AS(parse_mode("ef"), Error);
  CHECK(mode_notion(Mode::EFX) == FairnessNotion::EFX);
}

TEST_CASE("replay rejects traces without a matching") {
  Trace t{trace::Pick{0, 1, "g2"}};
  CHECK_THROWS_AS(replay_trace(t), Error);
  CHECK_THROWS_AS(replay_trace({}), Error);
}

TEST_CASE("step-2 claims hold on random instances") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 300; ++t) {
    const Instance instance = random_instance(rng, 2, 6, 2, 12);
    for (Mode mode : {Mode::EFR, Mode::EFX}) {
      const NswMatchingResult m = nsw_matching(instance);
      const AgentGroups groups = partition_groups(m.ranks, mode);
      const auto graph = build_envy_ratio_graph(instance, m.allocation);
      CHECK(rank_bounds_hold(graph, m.ranks));
      RefinementState state{m.allocation, groups,
                            topological_order(instance.agent_count(), envy_edges(graph))};
      state = refine_step2(instance, state);
      CHECK(step2_claims_hold(instance, state.allocation, groups));
      CHECK(step2_remaining_bounded(instance, state.allocation, groups));
    }
  }
}

}
