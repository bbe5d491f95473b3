#pragma once

// The two three-step allocation algorithms:
//
//   solve_efr  NSW matching, three-group refinement, envy-cycle elimination;
//              the result is (sqrt(3) - 1)-EFR.
//   solve_efx  NSW matching, two-group refinement, envy-cycle elimination;
//              the result is (golden ratio - 1)-EFX.
//
// Both record every decision in a Trace so a run can be replayed and
// audited. With SolveOptions::check_invariants the intermediate claims
// the guarantees rest on are verified exactly at each stage; any failure
// raises InternalGuaranteeViolated.

#include <string>
#include <variant>
#include <vector>

#include "fairdiv/envy.hpp"
#include "fairdiv/matching.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

enum class Mode { EFR, EFX };

const char* mode_name(Mode mode);
Mode parse_mode(std::string_view text);
FairnessNotion mode_notion(Mode mode);
/// sqrt(3) - 1 for EFR, golden ratio - 1 for EFX.
Threshold mode_guarantee(Mode mode);

/// Group of every agent, numbered from 1. EFR uses groups 1..3 split at
/// sqrt(3) + 1 and 2; EFX uses groups 1..2 split at the golden ratio.
/// An infinite rank lands in group 1.
struct AgentGroups {
  Mode mode = Mode::EFR;
  std::vector<int> group_of;

  /// Members of a group in ascending agent order.
  std::vector<Agent> members(int group) const;
  friend bool operator==(const AgentGroups&, const AgentGroups&) = default;
};

AgentGroups partition_groups(const EnvyRanks& ranks, Mode mode);

namespace trace {

struct MatchingDone {
  Allocation allocation;
  std::vector<ExtRational> ranks;
  friend bool operator==(const MatchingDone&, const MatchingDone&) = default;
};
struct GroupsAssigned {
  AgentGroups groups;
  friend bool operator==(const GroupsAssigned&, const GroupsAssigned&) = default;
};
struct Pick {
  Agent agent;
  Item item;
  std::string pass;
  friend bool operator==(const Pick&, const Pick&) = default;
};
struct CycleRotated {
  Cycle cycle;
  friend bool operator==(const CycleRotated&, const CycleRotated&) = default;
};
struct SourcePick {
  Agent agent;
  Item item;
  friend bool operator==(const SourcePick&, const SourcePick&) = default;
};
struct InvariantChecked {
  std::string name;
  bool pass;
  friend bool operator==(const InvariantChecked&, const InvariantChecked&) = default;
};

}  // namespace trace

using TraceEvent = std::variant<trace::MatchingDone, trace::GroupsAssigned,
                                trace::Pick, trace::CycleRotated,
                                trace::SourcePick, trace::InvariantChecked>;
using Trace = std::vector<TraceEvent>;

/// Re-applies the picks and rotations of a trace to its recorded matching.
Allocation replay_trace(const Trace& trace);

struct SolveOptions {
  bool check_invariants = true;
};

struct SolveResult {
  Allocation allocation;
  Trace trace;
  FairnessReport report;
};

/// Allocation after the matching, with groups and the topological order of
/// the strict envy graph of that matching.
struct RefinementState {
  Allocation allocation;
  AgentGroups groups;
  std::vector<Agent> order;
};

/// The agent takes its most valuable pool item (smallest index on ties).
/// Returns nullopt when the pool is empty.
std::optional<Item> pick_best(const Instance& instance, Allocation& allocation,
                              Agent agent);

/// EFR: group 3 picks twice in `order` (two separate passes), then group 2
/// picks once. EFX: group 2 picks once. Picks on an empty pool are skipped.
RefinementState refine_step2(const Instance& instance, RefinementState state,
                             Trace* trace = nullptr);

/// Per-step check applied inside envy_cycle_elimination.
struct StepCheck {
  FairnessNotion notion;
  Threshold threshold;
};

/// Rotates strict-envy cycles away, then lets the smallest unenvied agent
/// pick, until the pool is empty.
Allocation envy_cycle_elimination(const Instance& instance, Allocation allocation,
                                  Trace* trace = nullptr,
                                  const StepCheck* check = nullptr);

SolveResult solve(const Instance& instance, Mode mode, const SolveOptions& options = {});
SolveResult solve_efr(const Instance& instance, const SolveOptions& options = {});
SolveResult solve_efx(const Instance& instance, const SolveOptions& options = {});

// Exact checks of the bounds that hold after step 2. Exposed for tests.

/// Pairwise fairness of every envier against every other bundle at its
/// group's constant (EFR: 1, 3/4, sqrt(3)-1; EFX: 1, golden ratio - 1).
bool step2_claims_hold(const Instance& instance, const Allocation& allocation,
                       const AgentGroups& groups);

/// Pool items are small: EFR v_i(b) <= v_i(A_i)/(sqrt(3)+1) in group 1 and
/// <= v_i(A_i)/3 otherwise; EFX v_i(b) <= v_i(A_i)/phi in group 1 and
/// <= v_i(A_i)/2 in group 2.
bool step2_remaining_bounded(const Instance& instance, const Allocation& allocation,
                             const AgentGroups& groups);

/// w(i,j) <= r_j and r_i * w(i,j) <= r_j for all i != j.
bool rank_bounds_hold(const EnvyRatioGraph& graph, const EnvyRanks& ranks);

}  // namespace fairdiv
