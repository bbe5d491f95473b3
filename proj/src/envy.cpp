#include "fairdiv/envy.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace fairdiv {

namespace {

// Rotates a cycle so its smallest agent leads; the direction is kept.
Cycle canonical(Cycle cycle) {
  auto it = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), it, cycle.end());
  return cycle;
}

// Cycle through an infinite edge u -> v, closed by any positive path v ~> u.
std::optional<Cycle> infinite_cycle(const EnvyRatioGraph& graph) {
  const std::size_t n = graph.agent_count();
  for (Agent u = 0; u < n; ++u) {
    for (Agent v = 0; v < n; ++v) {
      if (u == v || !graph.weight(u, v).is_infinite()) continue;
      std::vector<std::optional<Agent>> parent(n);
      std::vector<char> seen(n, 0);
      std::queue<Agent> frontier;
      frontier.push(v);
      seen[v] = 1;
      while (!frontier.empty() && !seen[u]) {
        const Agent x = frontier.front();
        frontier.pop();
        for (Agent y = 0; y < n; ++y) {
          if (x == y || seen[y] || graph.weight(x, y).is_zero()) continue;
          seen[y] = 1;
          parent[y] = x;
          frontier.push(y);
        }
      }
      if (!seen[u]) continue;
      std::vector<Agent> back;
      for (Agent x = u; x != v; x = *parent[x]) back.push_back(x);
      Cycle cycle{u, v};
      // back = [u, ..., p1]; skip u and reverse into forward order.
      for (auto it = back.rbegin(); it != back.rend() && *it != u; ++it) {
        cycle.push_back(*it);
      }
      return canonical(std::move(cycle));
    }
  }
  return std::nullopt;
}

struct Relaxation {
  std::vector<ExtRational> dist;
  std::vector<std::optional<Agent>> pred;
  std::optional<Agent> changed_in_last_round;
};

// Max-product Bellman-Ford from a virtual source joined to every agent by
// weight 1. Runs `rounds` full passes over the edges accepted by `use`.
template <typename EdgeFilter>
Relaxation relax(const EnvyRatioGraph& graph, std::size_t rounds, EdgeFilter use) {
  const std::size_t n = graph.agent_count();
  Relaxation r{std::vector<ExtRational>(n, ExtRational(1L)),
               std::vector<std::optional<Agent>>(n), std::nullopt};
  for (std::size_t round = 1; round <= rounds; ++round) {
    std::optional<Agent> changed;
    for (Agent u = 0; u < n; ++u) {
      for (Agent v = 0; v < n; ++v) {
        if (u == v) continue;
        const ExtRational& w = graph.weight(u, v);
        if (!use(w)) continue;
        ExtRational candidate = r.dist[u] * w;
        if (candidate > r.dist[v]) {
          r.dist[v] = std::move(candidate);
          r.pred[v] = u;
          changed = v;
        }
      }
    }
    r.changed_in_last_round = changed;
    if (!changed) break;
  }
  return r;
}

bool finite_positive(const ExtRational& w) { return w.is_finite() && !w.is_zero(); }
bool positive(const ExtRational& w) { return !w.is_zero(); }

}  // namespace

EnvyRatioGraph build_envy_ratio_graph(const Instance& instance,
                                      const Allocation& allocation) {
  allocation.validate_for(instance);
  const std::size_t n = instance.agent_count();
  EnvyRatioGraph graph(n);
  for (Agent i = 0; i < n; ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    for (Agent j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational other = bundle_value(instance, i, allocation.bundle(j));
      if (sgn(own) == 0) {
        graph.set_weight(i, j, sgn(other) > 0 ? ExtRational::infinity() : ExtRational(0L));
      } else {
        graph.set_weight(i, j, ExtRational(Rational(other / own)));
      }
    }
  }
  return graph;
}

std::vector<Edge> envy_edges(const EnvyRatioGraph& graph) {
  std::vector<Edge> edges;
  const ExtRational one(1L);
  for (Agent i = 0; i < graph.agent_count(); ++i) {
    for (Agent j = 0; j < graph.agent_count(); ++j) {
      if (i != j && graph.weight(i, j) > one) edges.emplace_back(i, j);
    }
  }
  return edges;
}

ExtRational cycle_product(const EnvyRatioGraph& graph, const Cycle& cycle) {
  ExtRational product(1L);
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    product = product * graph.weight(cycle[k], cycle[(k + 1) % cycle.size()]);
  }
  return product;
}

std::optional<Cycle> find_improving_cycle(const EnvyRatioGraph& graph) {
  const std::size_t n = graph.agent_count();
  if (n < 2) return std::nullopt;
  if (auto c = infinite_cycle(graph)) return c;

  // With infinite edges excluded, a value that still improves in round n
  // lies downstream of a cycle with product > 1.
  Relaxation r = relax(graph, n, finite_positive);
  if (!r.changed_in_last_round) return std::nullopt;
  Agent x = *r.changed_in_last_round;
  for (std::size_t k = 0; k < n; ++k) {
    if (!r.pred[x]) {
      throw Error(ErrorCode::InternalGuaranteeViolated,
                  "predecessor chain ended before reaching a cycle");
    }
    x = *r.pred[x];
  }
  Cycle reversed{x};
  for (Agent y = *r.pred[x]; y != x; y = *r.pred[y]) reversed.push_back(y);
  Cycle cycle(reversed.rbegin(), reversed.rend());
  if (!(cycle_product(graph, cycle) > ExtRational(1L))) {
    throw Error(ErrorCode::InternalGuaranteeViolated,
                "predecessor cycle is not improving");
  }
  return canonical(std::move(cycle));
}

EnvyRanks envy_ranks(const EnvyRatioGraph& graph) {
  const std::size_t n = graph.agent_count();
  if (find_improving_cycle(graph)) {
    throw Error(ErrorCode::ImprovingCycleExists,
                "envy ranks are undefined on a graph with an improving cycle");
  }
  Relaxation r = relax(graph, n, positive);
  if (r.changed_in_last_round && n > 0) {
    throw Error(ErrorCode::ImprovingCycleExists, "relaxation did not converge");
  }
  return EnvyRanks{std::move(r.dist), std::move(r.pred)};
}

std::vector<Agent> max_product_path(const EnvyRanks& ranks, Agent agent) {
  const std::size_t n = ranks.ranks.size();
  std::vector<char> seen(n, 0);
  std::vector<Agent> path;
  std::optional<Agent> at = agent;
  while (at) {
    if (seen[*at]) {
      throw Error(ErrorCode::InternalGuaranteeViolated,
                  "rank predecessors contain a cycle");
    }
    seen[*at] = 1;
    path.push_back(*at);
    at = ranks.predecessor[*at];
  }
  std::reverse(path.begin(), path.end());
  return path;
}

std::vector<Agent> topological_order(std::size_t agent_count,
                                     const std::vector<Edge>& edges) {
  std::vector<std::vector<Agent>> out(agent_count);
  std::vector<std::size_t> indegree(agent_count, 0);
  for (const auto& [from, to] : edges) {
    if (from >= agent_count || to >= agent_count) {
      throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range");
    }
    out[from].push_back(to);
    ++indegree[to];
  }
  std::priority_queue<Agent, std::vector<Agent>, std::greater<>> sources;
  for (Agent a = 0; a < agent_count; ++a) {
    if (indegree[a] == 0) sources.push(a);
  }
  std::vector<Agent> order;
  order.reserve(agent_count);
  while (!sources.empty()) {
    const Agent a = sources.top();
    sources.pop();
    order.push_back(a);
    for (Agent b : out[a]) {
      if (--indegree[b] == 0) sources.push(b);
    }
  }
  if (order.size() != agent_count) {
    throw Error(ErrorCode::CyclicEnvyGraph, "envy graph has a directed cycle");
  }
  return order;
}

std::optional<Cycle> find_envy_cycle(const Instance& instance,
                                     const Allocation& allocation) {
  allocation.validate_for(instance);
  const std::size_t n = instance.agent_count();
  std::vector<std::vector<char>> envies(n, std::vector<char>(n, 0));
  for (Agent i = 0; i < n; ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    for (Agent j = 0; j < n; ++j) {
      envies[i][j] = i != j && own < bundle_value(instance, i, allocation.bundle(j));
    }
  }

  enum : char { kWhite, kGray, kBlack };
  std::vector<char> color(n, kWhite);
  std::vector<Agent> stack;
  std::optional<Cycle> found;
  std::function<void(Agent)> visit = [&](Agent u) {
    color[u] = kGray;
    stack.push_back(u);
    for (Agent v = 0; v < n && !found; ++v) {
      if (!envies[u][v]) continue;
      if (color[v] == kGray) {
        auto it = std::find(stack.begin(), stack.end(), v);
        found = Cycle(it, stack.end());
      } else if (color[v] == kWhite) {
        visit(v);
      }
    }
    stack.pop_back();
    color[u] = kBlack;
  };
  for (Agent s = 0; s < n && !found; ++s) {
    if (color[s] == kWhite) visit(s);
  }
  return found;
}

Allocation rotate_bundles(const Allocation& allocation, const Cycle& cycle) {
  if (cycle.size() < 2) {
    throw Error(ErrorCode::MalformedCycle, "a cycle needs at least two agents");
  }
  std::vector<char> seen(allocation.agent_count(), 0);
  for (Agent a : cycle) {
    if (a >= allocation.agent_count() || seen[a]) {
      throw Error(ErrorCode::MalformedCycle,
                  "cycle agents must be distinct and in range");
    }
    seen[a] = 1;
  }
  Allocation next = allocation;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    next.set_bundle(cycle[k], allocation.bundle(cycle[(k + 1) % cycle.size()]));
  }
  return next;
}

}  // namespace fairdiv
