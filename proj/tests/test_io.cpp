#include <doctest.h>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/io.hpp"
#include "support.hpp"

using namespace fairdiv;
using namespace fairdiv::testing;

TEST_SUITE("io") {

TEST_CASE("instance files round-trip") {
  const Instance instance = make_instance({{3, 0, 7}, {1, 2, 100}});
  const std::string text = write_instance(instance);
  CHECK(parse_instance(text) == instance);
  CHECK(write_instance(parse_instance(text)) == text);

  const Instance fractional = parse_instance(R"({"n":1,"m":2,"valuations":[["1/3", 4]]})");
  CHECK(fractional.value(0, 0) == Rational(1, 3));
  CHECK(fractional.value(0, 1) == 4);
  CHECK(parse_instance(write_instance(fractional)) == fractional);
}

TEST_CASE("malformed instance files") {
  CHECK_THROWS_AS(parse_instance("{"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":2,"valuations":[["1"]]})"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"n":2,"m":1,"valuations":[["1"]]})"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":1,"valuations":[[-1]]})"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":1,"valuations":[["1/0"]]})"), Error);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"m":1,"valuations":[[1.5]]})"), Error);
  CHECK_THROWS_AS(parse_instance(R"([1, 2])"), Error);
}

TEST_CASE("allocation files round-trip and are checked") {
  const Instance instance = two_agents();
  const Allocation a(5, {{0, 4}, {2}});
  const std::string text = write_allocation(a);
  CHECK(text == "{\"bundles\":[[0,4],[2]],\"remaining\":[1,3]}\n");
  CHECK(parse_allocation(text, instance) == a);
  CHECK_THROWS_AS(parse_allocation(R"({"bundles":[[0,5],[1]]})", instance), Error);
  CHECK_THROWS_AS(parse_allocation(R"({"bundles":[[0,1],[1]]})", instance), Error);
  CHECK_THROWS_AS(parse_allocation(R"({"bundles":[[0]]})", instance), Error);
  CHECK_THROWS_AS(parse_allocation(R"({"bundles":[[0],[1]],"remaining":[2]})", instance), Error);
  CHECK_NOTHROW(parse_allocation(R"({"bundles":[[0],[1]],"remaining":[2,3,4]})", instance));
}

TEST_CASE("generator is deterministic and honours its settings") {
  GenSpec spec;
  spec.agents = 3;
  spec.items = 6;
  spec.seed = 42;
  spec.zero_probability = Rational(1, 10);
  CHECK(write_instance(generate_instance(spec), spec) == write_instance(generate_instance(spec), spec));
  spec.seed = 43;
  const Instance other = generate_instance(spec);
  spec.seed = 42;
  CHECK_FALSE(generate_instance(spec) == other);

  GenSpec flat;
  flat.agents = 2;
  flat.items = 4;
  flat.lo = flat.hi = 5;
  const Instance five = generate_instance(flat);
  for (Agent i = 0; i < 2; ++i) {
    for (Item b = 0; b < 4; ++b) CHECK(five.value(i, b) == 5);
  }

  GenSpec zeros = flat;
  zeros.zero_probability = 1;
  const Instance z = generate_instance(zeros);
  for (Item b = 0; b < 4; ++b) CHECK(z.value(0, b) == 0);

  GenSpec bound;
  bound.agents = 3;
  bound.items = 2;
  CHECK_NOTHROW(generate_instance(bound));
  bound.solver_bound = true;
  try {
    generate_instance(bound);
    FAIL("expected InstanceTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InstanceTooSmall);
  }
}

TEST_CASE("generator header is echoed") {
  GenSpec spec;
  spec.agents = 2;
  spec.items = 2;
  spec.seed = 9;
  const std::string text = write_instance(generate_instance(spec), spec);
  CHECK(text.find("\"generator\"") != std::string::npos);
  CHECK(text.find("\"seed\": 9") != std::string::npos);
  CHECK(parse_instance(text) == generate_instance(spec));
}

TEST_CASE("traces round-trip") {
  const SolveResult r = solve_efr(four_agents());
  const std::string text = write_trace(r.trace);
  const Trace parsed = parse_trace(text);
  CHECK(parsed == r.trace);
  CHECK(write_trace(parsed) == text);
  CHECK(replay_trace(parsed) == r.allocation);
}

TEST_CASE("trace with an infinite rank round-trips") {
  Trace t{trace::MatchingDone{Allocation(2, {{0}, {1}}), {ExtRational::infinity(), ExtRational(Rational(1))}},
          trace::SourcePick{0, 1}};
  CHECK_THROWS_AS(replay_trace(t), Error);  // item 1 is already held
  t.pop_back();
  CHECK(parse_trace(write_trace(t)) == t);
}

TEST_CASE("malformed traces") {
  CHECK_THROWS_AS(parse_trace("{\"event\":\"teleport\"}\n"), Error);
  CHECK_THROWS_AS(parse_trace("{\"event\":\"pick\",\"agent\":0}\n"), Error);
  CHECK_THROWS_AS(parse_trace("not json\n"), Error);
  CHECK(parse_trace("").empty());
}

}
