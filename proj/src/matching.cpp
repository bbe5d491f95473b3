#include "fairdiv/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fairdiv {

namespace {

double log_of(const Rational& value) {
  long exp_num = 0;
  long exp_den = 0;
  const double num = mpz_get_d_2exp(&exp_num, value.get_num_mpz_t());
  const double den = mpz_get_d_2exp(&exp_den, value.get_den_mpz_t());
  return std::log(num) - std::log(den) +
         static_cast<double>(exp_num - exp_den) * std::log(2.0);
}

// Rectangular Hungarian method (rows <= cols), minimizing total cost.
// Returns the column assigned to each row.
std::vector<std::size_t> min_cost_assignment(const std::vector<std::vector<double>>& cost) {
  const std::size_t n = cost.size();
  const std::size_t m = cost.front().size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (p[j] != 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

void require_one_item_each(const Allocation& allocation) {
  for (const auto& b : allocation.bundles()) {
    if (b.size() != 1) {
      throw Error(ErrorCode::MalformedAllocation,
                  "matching must hold exactly one item per agent");
    }
  }
}

}  // namespace

NswObjective nsw_objective(const Instance& instance, const Allocation& allocation) {
  NswObjective objective;
  for (Agent i = 0; i < allocation.agent_count(); ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    if (sgn(own) > 0) {
      ++objective.positive_count;
      objective.product *= own;
    }
  }
  return objective;
}

Allocation float_log_matching(const Instance& instance) {
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.item_count();
  if (m < n) {
    throw Error(ErrorCode::InstanceTooSmall,
                std::to_string(m) + " items for " + std::to_string(n) + " agents");
  }
  std::vector<std::vector<double>> logs(n, std::vector<double>(m, 0.0));
  double spread = 0.0;
  for (Agent i = 0; i < n; ++i) {
    for (Item b = 0; b < m; ++b) {
      if (sgn(instance(i, b)) > 0) {
        logs[i][b] = log_of(instance(i, b));
        spread = std::max(spread, std::abs(logs[i][b]));
      }
    }
  }
  // One zero-valued pair must cost more than any rearrangement of
  // positive pairs can gain.
  const double penalty = 2.0 * static_cast<double>(n) * spread + 1.0;
  std::vector<std::vector<double>> cost(n, std::vector<double>(m, 0.0));
  for (Agent i = 0; i < n; ++i) {
    for (Item b = 0; b < m; ++b) {
      cost[i][b] = sgn(instance(i, b)) > 0 ? -logs[i][b] : penalty;
    }
  }
  const auto assignment = min_cost_assignment(cost);
  std::vector<Bundle> bundles(n);
  for (Agent i = 0; i < n; ++i) bundles[i] = {assignment[i]};
  return Allocation(m, std::move(bundles));
}

NswMatchingResult repair_matching(const Instance& instance, Allocation current,
                                  const MoveObserver& observer) {
  current.validate_for(instance);
  require_one_item_each(current);
  const std::size_t n = instance.agent_count();

  for (;;) {
    const NswObjective before = nsw_objective(instance, current);
    const EnvyRatioGraph graph = build_envy_ratio_graph(instance, current);
    RepairMove move;
    move.before = before;

    if (auto cycle = find_improving_cycle(graph)) {
      current = rotate_bundles(current, *cycle);
      move.kind = RepairMove::Kind::Cycle;
      move.agents = std::move(*cycle);
    } else {
      EnvyRanks ranks = envy_ranks(graph);
      const auto pool = current.remaining();
      std::optional<std::pair<Agent, Item>> violation;
      for (Agent i = 0; i < n && !violation; ++i) {
        const Rational& own = instance(i, current.bundle(i).front());
        std::optional<Item> best;
        for (Item b : pool) {
          if (!best || instance(i, b) > instance(i, *best)) best = b;
        }
        if (best && ranks.ranks[i] * ExtRational(instance(i, *best)) > ExtRational(own)) {
          violation = std::make_pair(i, *best);
        }
      }
      if (!violation) return NswMatchingResult{std::move(current), std::move(ranks)};

      const auto [agent, item] = *violation;
      const auto path = max_product_path(ranks, agent);
      const Allocation old = current;
      for (std::size_t t = 0; t + 1 < path.size(); ++t) {
        current.set_bundle(path[t], old.bundle(path[t + 1]));
      }
      current.set_bundle(agent, {item});
      move.kind = RepairMove::Kind::Path;
      move.agents = path;
      move.taken = item;
      move.released = old.bundle(path.front()).front();
    }

    move.after = nsw_objective(instance, current);
    if (!(move.before < move.after)) {
      throw Error(ErrorCode::InternalGuaranteeViolated,
                  "repair move did not increase the matching objective");
    }
    if (observer) observer(move);
  }
}

NswMatchingResult nsw_matching(const Instance& instance, const MoveObserver& observer) {
  return repair_matching(instance, float_log_matching(instance), observer);
}

bool verify_nsw_certificate(const Instance& instance, const Allocation& allocation) {
  allocation.validate_for(instance);
  require_one_item_each(allocation);
  const EnvyRatioGraph graph = build_envy_ratio_graph(instance, allocation);
  if (find_improving_cycle(graph)) return false;
  const EnvyRanks ranks = envy_ranks(graph);
  const auto pool = allocation.remaining();
  for (Agent i = 0; i < instance.agent_count(); ++i) {
    const ExtRational own(instance(i, allocation.bundle(i).front()));
    for (Item b : pool) {
      if (ranks.ranks[i] * ExtRational(instance(i, b)) > own) return false;
    }
  }
  return true;
}

}  // namespace fairdiv
