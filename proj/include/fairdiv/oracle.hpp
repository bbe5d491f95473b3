#pragma once

// Brute-force references for small instances. Everything here is computed
// by exhaustive enumeration with its own value and weight arithmetic; the
// only things shared with the solver are the Instance and Allocation types
// and the number types.
//
// The two enumerations over complete allocations are OpenMP-parallel over
// contiguous index ranges. Each has a *_serial twin that walks the same
// indices in order; both return identical results (ties go to the smallest
// enumeration index).

#include <cstdint>
#include <optional>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

struct OracleLimits {
  std::size_t max_agents = 7;
  std::size_t max_items = 8;
  std::uint64_t max_allocations = 2'000'000;
};

struct OracleMatching {
  std::size_t positive_count = 0;
  Rational product{1};
  /// Item of every agent.
  std::vector<Item> assignment;
};

struct OracleCycle {
  std::vector<Agent> cycle;
  ExtRational product;
};

struct OracleFactor {
  /// Empty means Unbounded.
  std::optional<Rational> factor;
  Allocation witness;
};

struct OracleNswAllocations {
  std::size_t positive_count = 0;
  Rational product{1};
  /// Every complete allocation attaining the maximum, in enumeration order.
  std::vector<Allocation> maximizers;
};

/// Lexicographic maximum of (positive own values, product of them) over all
/// injective agent -> item assignments; the witness is the lexicographically
/// smallest maximizer.
OracleMatching oracle_nsw_matching(const Instance& instance,
                                   const OracleLimits& limits = {});

/// Maximum-product simple cycle of the envy-ratio graph, if that product
/// exceeds 1.
std::optional<OracleCycle> oracle_improving_cycle(const Instance& instance,
                                                  const Allocation& allocation,
                                                  const OracleLimits& limits = {});

/// max(1, largest product over simple paths ending at `agent`).
ExtRational oracle_envy_rank(const Instance& instance, const Allocation& allocation,
                             Agent agent, const OracleLimits& limits = {});

/// Mean of the bundle's value over every single-item removal. Throws
/// InvalidInput on an empty bundle.
Rational oracle_removal_expectation(const Instance& instance, Agent observer,
                                    const Bundle& bundle);

/// Fairness factor by explicit removal enumeration (empty = Unbounded).
std::optional<Rational> oracle_fairness_factor(const Instance& instance,
                                               const Allocation& allocation,
                                               FairnessNotion notion);

/// Best achievable factor over all n^m complete allocations.
OracleFactor oracle_best_factor(const Instance& instance, FairnessNotion notion,
                                const OracleLimits& limits = {});
OracleFactor oracle_best_factor_serial(const Instance& instance, FairnessNotion notion,
                                       const OracleLimits& limits = {});

/// All complete allocations maximizing (positive count, product).
OracleNswAllocations oracle_nsw_allocations(const Instance& instance,
                                            const OracleLimits& limits = {});
OracleNswAllocations oracle_nsw_allocations_serial(const Instance& instance,
                                                   const OracleLimits& limits = {});

}  // namespace fairdiv
