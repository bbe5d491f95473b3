#include "fairdiv/algorithms.hpp"

#include <algorithm>

namespace fairdiv {

namespace {

void record(Trace* trace, TraceEvent event) {
  if (trace) trace->push_back(std::move(event));
}

// Records the outcome of a check; a failed check is a defect.
void checked(Trace* trace, const std::string& name, bool pass) {
  record(trace, trace::InvariantChecked{name, pass});
  if (!pass) {
    throw Error(ErrorCode::InternalGuaranteeViolated, "invariant '" + name + "' failed");
  }
}

Threshold claim_constant(Mode mode, int group) {
  if (group == 1) return Threshold::of(1);
  if (mode == Mode::EFX) return Threshold::golden_ratio_minus_1();
  if (group == 2) return Threshold::of(Rational(3, 4));
  return Threshold::sqrt3_minus_1();  // = 2 / (sqrt(3) + 1)
}

Threshold remaining_bound(Mode mode, int group) {
  if (mode == Mode::EFR) {
    return group == 1 ? Threshold::sqrt3_plus_1() : Threshold::of(3);
  }
  return group == 1 ? Threshold::golden_ratio() : Threshold::of(2);
}

// After step 2 every pool item is worth at most own value / bound to every
// agent; envy-cycle elimination then keeps the guarantee.
Threshold step3_premise(Mode mode) {
  return mode == Mode::EFR ? Threshold::sqrt3_plus_1() : Threshold::golden_ratio();
}

bool bundle_shape_holds(const Allocation& allocation, const AgentGroups& groups) {
  for (Agent i = 0; i < allocation.agent_count(); ++i) {
    if (allocation.bundle(i).size() != static_cast<std::size_t>(groups.group_of[i])) return false;
  }
  return true;
}

bool remaining_below(const Instance& instance, const Allocation& allocation,
                     const Threshold& bound) {
  const auto pool = allocation.remaining();
  for (Agent i = 0; i < instance.agent_count(); ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    for (Item b : pool) {
      if (!at_least(own, bound, instance(i, b))) return false;
    }
  }
  return true;
}

}  // namespace

const char* mode_name(Mode mode) { return mode == Mode::EFR ? "efr" : "efx"; }

Mode parse_mode(std::string_view text) {
  if (text == "efr") return Mode::EFR;
  if (text == "efx") return Mode::EFX;
  throw Error(ErrorCode::InvalidInput, "unknown algorithm '" + std::string(text) + "'");
}

FairnessNotion mode_notion(Mode mode) {
  return mode == Mode::EFR ? FairnessNotion::EFR : FairnessNotion::EFX;
}

Threshold mode_guarantee(Mode mode) {
  return mode == Mode::EFR ? Threshold::sqrt3_minus_1() : Threshold::golden_ratio_minus_1();
}

std::vector<Agent> AgentGroups::members(int group) const {
  std::vector<Agent> out;
  for (Agent i = 0; i < group_of.size(); ++i) {
    if (group_of[i] == group) out.push_back(i);
  }
  return out;
}

AgentGroups partition_groups(const EnvyRanks& ranks, Mode mode) {
  AgentGroups groups;
  groups.mode = mode;
  groups.group_of.reserve(ranks.ranks.size());
  for (const auto& r : ranks.ranks) {
    int g = 0;
    if (r.is_infinite()) {
      g = 1;
    } else if (mode == Mode::EFR) {
      g = greater_than(r.value(), Threshold::sqrt3_plus_1()) ? 1 : r.value() > 2 ? 2 : 3;
    } else {
      g = greater_than(r.value(), Threshold::golden_ratio()) ? 1 : 2;
    }
    groups.group_of.push_back(g);
  }
  return groups;
}

Allocation replay_trace(const Trace& events) {
  std::optional<Allocation> allocation;
  for (const auto& event : events) {
    if (const auto* m = std::get_if<trace::MatchingDone>(&event)) {
      allocation = m->allocation;
      continue;
    }
    if (!allocation) {
      if (std::holds_alternative<trace::InvariantChecked>(event) ||
          std::holds_alternative<trace::GroupsAssigned>(event)) {
        continue;
      }
      throw Error(ErrorCode::InvalidInput, "trace event before the matching");
    }
    if (const auto* p = std::get_if<trace::Pick>(&event)) {
      allocation->give(p->agent, p->item);
    } else if (const auto* s = std::get_if<trace::SourcePick>(&event)) {
      allocation->give(s->agent, s->item);
    } else if (const auto* c = std::get_if<trace::CycleRotated>(&event)) {
      *allocation = rotate_bundles(*allocation, c->cycle);
    }
  }
  if (!allocation) throw Error(ErrorCode::InvalidInput, "trace has no matching");
  return *allocation;
}

std::optional<Item> pick_best(const Instance& instance, Allocation& allocation,
                              Agent agent) {
  std::optional<Item> best;
  for (Item b : allocation.remaining()) {
    if (!best || instance(agent, b) > instance(agent, *best)) best = b;
  }
  if (best) allocation.give(agent, *best);
  return best;
}

RefinementState refine_step2(const Instance& instance, RefinementState state,
                             Trace* trace) {
  auto pass = [&](int group, const char* label) {
    for (Agent a : state.order) {
      if (state.groups.group_of.at(a) != group) continue;
      if (auto item = pick_best(instance, state.allocation, a)) {
        record(trace, trace::Pick{a, *item, label});
      }
    }
  };
  if (state.groups.mode == Mode::EFR) {
    pass(3, "g3-first");
    pass(3, "g3-second");
    pass(2, "g2");
  } else {
    pass(2, "g2");
  }
  return state;
}

Allocation envy_cycle_elimination(const Instance& instance, Allocation allocation,
                                  Trace* trace, const StepCheck* check) {
  const std::size_t n = instance.agent_count();
  auto verify = [&] {
    if (!check) return;
    const auto report = fairness_factor(instance, allocation, check->notion);
    checked(trace, "step3-monotone", meets_threshold(report, check->threshold));
  };
  while (!allocation.remaining().empty()) {
    while (auto cycle = find_envy_cycle(instance, allocation)) {
      allocation = rotate_bundles(allocation, *cycle);
      record(trace, trace::CycleRotated{std::move(*cycle)});
      verify();
    }
    std::vector<char> envied(n, 0);
    for (Agent i = 0; i < n; ++i) {
      const Rational own = bundle_value(instance, i, allocation.bundle(i));
      for (Agent j = 0; j < n; ++j) {
        if (i != j && own < bundle_value(instance, i, allocation.bundle(j))) envied[j] = 1;
      }
    }
    const auto source = std::find(envied.begin(), envied.end(), 0);
    if (source == envied.end()) {
      throw Error(ErrorCode::InternalGuaranteeViolated, "acyclic envy graph without a source");
    }
    const Agent s = static_cast<Agent>(source - envied.begin());
    const auto item = pick_best(instance, allocation, s);
    record(trace, trace::SourcePick{s, *item});
    verify();
  }
  return allocation;
}

bool step2_claims_hold(const Instance& instance, const Allocation& allocation,
                       const AgentGroups& groups) {
  const auto notion = mode_notion(groups.mode);
  for (Agent i = 0; i < instance.agent_count(); ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    const Threshold c = claim_constant(groups.mode, groups.group_of.at(i));
    for (Agent j = 0; j < instance.agent_count(); ++j) {
      if (i == j) continue;
      const Rational rival = comparison_value(instance, notion, i, allocation.bundle(j));
      if (!at_least(own, c, rival)) return false;
    }
  }
  return true;
}

bool step2_remaining_bounded(const Instance& instance, const Allocation& allocation,
                             const AgentGroups& groups) {
  const auto pool = allocation.remaining();
  for (Agent i = 0; i < instance.agent_count(); ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    const Threshold bound = remaining_bound(groups.mode, groups.group_of.at(i));
    for (Item b : pool) {
      if (!at_least(own, bound, instance(i, b))) return false;
    }
  }
  return true;
}

bool rank_bounds_hold(const EnvyRatioGraph& graph, const EnvyRanks& ranks) {
  for (Agent i = 0; i < graph.agent_count(); ++i) {
    for (Agent j = 0; j < graph.agent_count(); ++j) {
      if (i == j) continue;
      const ExtRational& w = graph.weight(i, j);
      if (w > ranks.ranks[j] || ranks.ranks[i] * w > ranks.ranks[j]) return false;
    }
  }
  return true;
}

SolveResult solve(const Instance& instance, Mode mode, const SolveOptions& options) {
  SolveResult result;
  Trace* trace = &result.trace;
  const bool checks = options.check_invariants;

  // Step 1: certified matching and groups.
  NswMatchingResult matching = nsw_matching(instance);
  record(trace, trace::MatchingDone{matching.allocation, matching.ranks.ranks});
  const EnvyRatioGraph graph = build_envy_ratio_graph(instance, matching.allocation);
  if (checks) {
    checked(trace, "step1-certificate", verify_nsw_certificate(instance, matching.allocation));
    checked(trace, "step1-rank-bounds", rank_bounds_hold(graph, matching.ranks));
  }
  AgentGroups groups = partition_groups(matching.ranks, mode);
  record(trace, trace::GroupsAssigned{groups});

  // Step 2: refinement in topological order of the strict envy graph.
  RefinementState state{matching.allocation, groups,
                        topological_order(instance.agent_count(), envy_edges(graph))};
  const std::size_t events_before = trace->size();
  state = refine_step2(instance, std::move(state), trace);
  if (checks) {
    const std::size_t picks = trace->size() - events_before;
    const std::size_t planned = mode == Mode::EFR
                                    ? 2 * groups.members(3).size() + groups.members(2).size()
                                    : groups.members(2).size();
    if (picks == planned) {
      checked(trace, "step2-bundle-shape", bundle_shape_holds(state.allocation, groups));
    }
    checked(trace, "step2-claims", step2_claims_hold(instance, state.allocation, groups));
    if (mode == Mode::EFR) {
      checked(trace, "step2-factor",
              meets_threshold(fairness_factor(instance, state.allocation, FairnessNotion::EFR),
                              Threshold::sqrt3_minus_1()));
    }
    checked(trace, "step2-remaining",
            step2_remaining_bounded(instance, state.allocation, groups));
    checked(trace, "step3-premise",
            remaining_below(instance, state.allocation, step3_premise(mode)));
  }

  // Step 3: envy-cycle elimination over the rest of the pool.
  const StepCheck step_check{mode_notion(mode), mode_guarantee(mode)};
  result.allocation = envy_cycle_elimination(instance, std::move(state.allocation), trace,
                                             checks ? &step_check : nullptr);

  result.report = fairness_factor(instance, result.allocation, mode_notion(mode));
  checked(trace, "final-guarantee",
          result.allocation.is_complete() && meets_threshold(result.report, mode_guarantee(mode)));
  return result;
}

SolveResult solve_efr(const Instance& instance, const SolveOptions& options) {
  return solve(instance, Mode::EFR, options);
}

SolveResult solve_efx(const Instance& instance, const SolveOptions& options) {
  return solve(instance, Mode::EFX, options);
}

}  // namespace fairdiv
