#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "fairdiv/envy.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

/// Lexicographic matching objective: number of agents with positive own
/// value first, then the product of those positive values (1 when none).
struct NswObjective {
  std::size_t positive_count = 0;
  Rational product{1};

  friend bool operator==(const NswObjective&, const NswObjective&) = default;
  friend bool operator<(const NswObjective& a, const NswObjective& b) {
    if (a.positive_count != b.positive_count) return a.positive_count < b.positive_count;
    return a.product < b.product;
  }
};

NswObjective nsw_objective(const Instance& instance, const Allocation& allocation);

/// One step of the exact repair loop.
struct RepairMove {
  enum class Kind { Cycle, Path };
  Kind kind = Kind::Cycle;
  /// Cycle agents, or the path j0 -> ... -> i whose items shift backwards.
  std::vector<Agent> agents;
  /// Path moves only: the pool item handed to the path's last agent and
  /// the item released by the path's first agent.
  std::optional<Item> taken;
  std::optional<Item> released;
  NswObjective before;
  NswObjective after;
};

using MoveObserver = std::function<void(const RepairMove&)>;

/// One item per agent, no improving cycle, and r_i * v_i(b) <= v_i(A_i)
/// for every agent i and pool item b.
struct NswMatchingResult {
  Allocation allocation;
  EnvyRanks ranks;
};

/// Maximum-weight assignment of one item per agent under log weights,
/// computed in floating point. Zero-valued pairs carry a penalty larger
/// than any achievable spread of log values.
Allocation float_log_matching(const Instance& instance);

/// Applies improving-cycle rotations and path moves to a one-item-per-agent
/// allocation until both certificate clauses hold exactly.
NswMatchingResult repair_matching(const Instance& instance, Allocation start,
                                  const MoveObserver& observer = {});

/// Throws InstanceTooSmall when item_count < agent_count.
NswMatchingResult nsw_matching(const Instance& instance,
                               const MoveObserver& observer = {});

bool verify_nsw_certificate(const Instance& instance, const Allocation& allocation);

}  // namespace fairdiv
