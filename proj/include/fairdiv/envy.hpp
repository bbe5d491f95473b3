#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "fairdiv/model.hpp"

namespace fairdiv {

/// Complete weighted digraph of envy ratios w(i, j) = v_i(A_j) / v_i(A_i).
///
/// Zero own value: w(i, j) is +infinity when v_i(A_j) > 0 and 0 when both
/// are zero. The diagonal is not meaningful and always reads 0.
class EnvyRatioGraph {
 public:
  EnvyRatioGraph() = default;
  explicit EnvyRatioGraph(std::size_t agent_count)
      : n_(agent_count), weights_(agent_count * agent_count) {}

  std::size_t agent_count() const { return n_; }
  const ExtRational& weight(Agent from, Agent to) const {
    return weights_[from * n_ + to];
  }
  void set_weight(Agent from, Agent to, ExtRational w) {
    weights_[from * n_ + to] = std::move(w);
  }

 private:
  std::size_t n_ = 0;
  std::vector<ExtRational> weights_;
};

/// Envy-rank per agent: the largest edge-weight product over simple paths
/// ending at the agent, never below 1 (the empty path).
struct EnvyRanks {
  std::vector<ExtRational> ranks;
  /// Predecessor of each agent on a maximum-product path ending there;
  /// empty when the empty path is optimal.
  std::vector<std::optional<Agent>> predecessor;
};

/// Agents i1, ..., ik read cyclically: i1 -> i2 -> ... -> ik -> i1.
using Cycle = std::vector<Agent>;
using Edge = std::pair<Agent, Agent>;

EnvyRatioGraph build_envy_ratio_graph(const Instance& instance,
                                      const Allocation& allocation);

/// Strict envy edges (w > 1), in lexicographic order.
std::vector<Edge> envy_edges(const EnvyRatioGraph& graph);

/// Some cycle whose weight product exceeds 1, rotated so that its smallest
/// agent comes first; nullopt when none exists.
std::optional<Cycle> find_improving_cycle(const EnvyRatioGraph& graph);

/// Product of edge weights around a cycle.
ExtRational cycle_product(const EnvyRatioGraph& graph, const Cycle& cycle);

/// Throws ImprovingCycleExists when the graph admits an improving cycle.
EnvyRanks envy_ranks(const EnvyRatioGraph& graph);

/// Maximum-product path ending at `agent` (the agent is the last element),
/// reconstructed from the rank predecessors.
std::vector<Agent> max_product_path(const EnvyRanks& ranks, Agent agent);

/// Kahn ordering with the smallest available source first. Throws
/// CyclicEnvyGraph when the edges contain a cycle.
std::vector<Agent> topological_order(std::size_t agent_count,
                                     const std::vector<Edge>& edges);

/// A directed cycle of strict envy (v_i(A_i) < v_i(A_next)), found by DFS
/// from the smallest agent upward; nullopt when the envy graph is acyclic.
std::optional<Cycle> find_envy_cycle(const Instance& instance,
                                     const Allocation& allocation);

/// Each agent on the cycle receives its successor's bundle.
Allocation rotate_bundles(const Allocation& allocation, const Cycle& cycle);

}  // namespace fairdiv
