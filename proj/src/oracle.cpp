#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <functional>

#include <omp.h>

namespace fairdiv {

namespace {

void require_agents(const Instance& instance, const OracleLimits& limits) {
  if (instance.agent_count() > limits.max_agents) {
    throw Error(ErrorCode::LimitExceeded,
                std::to_string(instance.agent_count()) + " agents exceed the oracle limit of " +
                    std::to_string(limits.max_agents));
  }
}

void require_items(const Instance& instance, const OracleLimits& limits) {
  require_agents(instance, limits);
  if (instance.item_count() > limits.max_items) {
    throw Error(ErrorCode::LimitExceeded,
                std::to_string(instance.item_count()) + " items exceed the oracle limit of " +
                    std::to_string(limits.max_items));
  }
}

// n^m, or throws when it passes the allocation limit.
std::uint64_t allocation_count(const Instance& instance, const OracleLimits& limits) {
  require_items(instance, limits);
  std::uint64_t total = 1;
  for (std::size_t b = 0; b < instance.item_count(); ++b) {
    total *= instance.agent_count();
    if (total > limits.max_allocations) {
      throw Error(ErrorCode::LimitExceeded,
                  "more than " + std::to_string(limits.max_allocations) + " allocations");
    }
  }
  return total;
}

Allocation decode(std::uint64_t index, std::size_t n, std::size_t m) {
  std::vector<Bundle> bundles(n);
  for (Item b = 0; b < m; ++b) {
    bundles[index % n].push_back(b);
    index /= n;
  }
  return Allocation(m, std::move(bundles));
}

Rational sum_of(const Instance& instance, Agent agent, const Bundle& bundle) {
  Rational s = 0;
  for (Item b : bundle) s += instance(agent, b);
  return s;
}

Bundle without(const Bundle& bundle, std::size_t position) {
  Bundle rest;
  for (std::size_t k = 0; k < bundle.size(); ++k) {
    if (k != position) rest.push_back(bundle[k]);
  }
  return rest;
}

std::vector<ExtRational> weight_table(const Instance& instance, const Allocation& allocation) {
  const std::size_t n = instance.agent_count();
  std::vector<ExtRational> w(n * n);
  for (Agent i = 0; i < n; ++i) {
    const Rational own = sum_of(instance, i, allocation.bundle(i));
    for (Agent j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational other = sum_of(instance, i, allocation.bundle(j));
      if (own == 0) {
        w[i * n + j] = other > 0 ? ExtRational::infinity() : ExtRational(0L);
      } else {
        w[i * n + j] = ExtRational(Rational(other / own));
      }
    }
  }
  return w;
}

// Unbounded (empty) is the top element.
bool better_factor(const std::optional<Rational>& a, const std::optional<Rational>& b) {
  if (!a) return b.has_value();
  return b && *a > *b;
}

struct NswScore {
  std::size_t positive = 0;
  Rational product{1};
};

NswScore score_of(const Instance& instance, const Allocation& allocation) {
  NswScore s;
  for (Agent i = 0; i < instance.agent_count(); ++i) {
    const Rational v = sum_of(instance, i, allocation.bundle(i));
    if (v > 0) {
      ++s.positive;
      s.product *= v;
    }
  }
  return s;
}

int compare_scores(const NswScore& a, const NswScore& b) {
  if (a.positive != b.positive) return a.positive < b.positive ? -1 : 1;
  return cmp(a.product, b.product);
}

// Splits [0, total) into ordered chunks, scans them concurrently, and hands
// back the per-chunk results in chunk order.
template <typename Result, typename Scan>
std::vector<Result> scan_chunks(std::uint64_t total, Scan scan) {
  const auto chunks = static_cast<std::int64_t>(
      std::min<std::uint64_t>(total, 4 * static_cast<std::uint64_t>(omp_get_max_threads())));
  std::vector<Result> results(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t c = 0; c < chunks; ++c) {
    const std::uint64_t begin = total * static_cast<std::uint64_t>(c) / chunks;
    const std::uint64_t end = total * static_cast<std::uint64_t>(c + 1) / chunks;
    results[static_cast<std::size_t>(c)] = scan(begin, end);
  }
  return results;
}

struct FactorChunk {
  bool found = false;
  std::optional<Rational> factor;
  std::uint64_t index = 0;
};

FactorChunk scan_factor(const Instance& instance, FairnessNotion notion,
                        std::uint64_t begin, std::uint64_t end) {
  FactorChunk best;
  for (std::uint64_t k = begin; k < end; ++k) {
    auto f = oracle_fairness_factor(
        instance, decode(k, instance.agent_count(), instance.item_count()), notion);
    if (!best.found || better_factor(f, best.factor)) {
      best = FactorChunk{true, std::move(f), k};
    }
  }
  return best;
}

OracleFactor finish_factor(const Instance& instance, const std::vector<FactorChunk>& chunks) {
  FactorChunk best;
  for (const auto& c : chunks) {
    if (c.found && (!best.found || better_factor(c.factor, best.factor))) best = c;
  }
  return OracleFactor{best.factor,
                      decode(best.index, instance.agent_count(), instance.item_count())};
}

struct NswChunk {
  bool found = false;
  NswScore score;
  std::vector<std::uint64_t> indices;
};

NswChunk scan_nsw(const Instance& instance, std::uint64_t begin, std::uint64_t end) {
  NswChunk best;
  for (std::uint64_t k = begin; k < end; ++k) {
    NswScore s = score_of(instance, decode(k, instance.agent_count(), instance.item_count()));
    const int c = best.found ? compare_scores(s, best.score) : 1;
    if (c > 0) {
      best = NswChunk{true, std::move(s), {k}};
    } else if (c == 0) {
      best.indices.push_back(k);
    }
  }
  return best;
}

OracleNswAllocations finish_nsw(const Instance& instance, const std::vector<NswChunk>& chunks) {
  NswChunk best;
  for (const auto& c : chunks) {
    if (!c.found) continue;
    const int cmp_result = best.found ? compare_scores(c.score, best.score) : 1;
    if (cmp_result > 0) {
      best = c;
    } else if (cmp_result == 0) {
      best.indices.insert(best.indices.end(), c.indices.begin(), c.indices.end());
    }
  }
  OracleNswAllocations out;
  out.positive_count = best.score.positive;
  out.product = best.score.product;
  for (auto k : best.indices) {
    out.maximizers.push_back(decode(k, instance.agent_count(), instance.item_count()));
  }
  return out;
}

}  // namespace

OracleMatching oracle_nsw_matching(const Instance& instance, const OracleLimits& limits) {
  require_items(instance, limits);
  const std::size_t n = instance.agent_count();
  const std::size_t m = instance.item_count();
  if (m < n) throw Error(ErrorCode::InstanceTooSmall, "fewer items than agents");
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < n; ++k) count *= (m - k);
  if (count > limits.max_allocations) {
    throw Error(ErrorCode::LimitExceeded, std::to_string(count) + " assignments");
  }

  OracleMatching best;
  bool found = false;
  std::vector<Item> current;
  std::vector<char> used(m, 0);
  std::function<void()> extend = [&] {
    if (current.size() == n) {
      NswScore s;
      for (Agent i = 0; i < n; ++i) {
        const Rational& v = instance(i, current[i]);
        if (v > 0) {
          ++s.positive;
          s.product *= v;
        }
      }
      const NswScore incumbent{best.positive_count, best.product};
      if (!found || compare_scores(s, incumbent) > 0) {
        found = true;
        best = OracleMatching{s.positive, s.product, current};
      }
      return;
    }
    for (Item b = 0; b < m; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      current.push_back(b);
      extend();
      current.pop_back();
      used[b] = 0;
    }
  };
  extend();
  return best;
}

std::optional<OracleCycle> oracle_improving_cycle(const Instance& instance,
                                                  const Allocation& allocation,
                                                  const OracleLimits& limits) {
  require_agents(instance, limits);
  const std::size_t n = instance.agent_count();
  const auto w = weight_table(instance, allocation);
  std::optional<OracleCycle> best;
  std::vector<Agent> path;
  std::vector<char> on_path(n, 0);
  std::function<void(Agent, const ExtRational&)> walk = [&](Agent start,
                                                            const ExtRational& product) {
    const Agent last = path.back();
    if (path.size() >= 2) {
      ExtRational closed = product * w[last * n + start];
      if (!best || closed > best->product) best = OracleCycle{path, std::move(closed)};
    }
    for (Agent next = start + 1; next < n; ++next) {
      if (on_path[next]) continue;
      on_path[next] = 1;
      path.push_back(next);
      walk(start, product * w[last * n + next]);
      path.pop_back();
      on_path[next] = 0;
    }
  };
  for (Agent s = 0; s < n; ++s) {
    path = {s};
    on_path.assign(n, 0);
    on_path[s] = 1;
    walk(s, ExtRational(1L));
  }
  if (best && best->product > ExtRational(1L)) return best;
  return std::nullopt;
}

ExtRational oracle_envy_rank(const Instance& instance, const Allocation& allocation,
                             Agent agent, const OracleLimits& limits) {
  require_agents(instance, limits);
  const std::size_t n = instance.agent_count();
  if (agent >= n) throw Error(ErrorCode::IndexOutOfRange, "agent out of range");
  const auto w = weight_table(instance, allocation);
  ExtRational best(1L);
  std::vector<char> on_path(n, 0);
  // Grows paths backwards from `agent`; `head` is the current first vertex.
  std::function<void(Agent, const ExtRational&)> grow = [&](Agent head,
                                                            const ExtRational& product) {
    if (product > best) best = product;
    for (Agent prev = 0; prev < n; ++prev) {
      if (on_path[prev]) continue;
      on_path[prev] = 1;
      grow(prev, w[prev * n + head] * product);
      on_path[prev] = 0;
    }
  };
  on_path[agent] = 1;
  grow(agent, ExtRational(1L));
  return best;
}

Rational oracle_removal_expectation(const Instance& instance, Agent observer,
                                    const Bundle& bundle) {
  if (bundle.empty()) throw Error(ErrorCode::InvalidInput, "empty bundle");
  if (observer >= instance.agent_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "observer out of range");
  }
  Rational total = 0;
  for (std::size_t k = 0; k < bundle.size(); ++k) {
    total += sum_of(instance, observer, without(bundle, k));
  }
  total /= static_cast<long>(bundle.size());
  return total;
}

std::optional<Rational> oracle_fairness_factor(const Instance& instance,
                                               const Allocation& allocation,
                                               FairnessNotion notion) {
  const std::size_t n = instance.agent_count();
  std::optional<Rational> factor;
  for (Agent i = 0; i < n; ++i) {
    const Rational own = sum_of(instance, i, allocation.bundle(i));
    for (Agent j = 0; j < n; ++j) {
      if (i == j) continue;
      const Bundle& rival = allocation.bundle(j);
      Rational d = 0;
      if (notion == FairnessNotion::EF) {
        d = sum_of(instance, i, rival);
      } else if (!rival.empty()) {
        std::vector<Rational> after;
        for (std::size_t k = 0; k < rival.size(); ++k) {
          after.push_back(sum_of(instance, i, without(rival, k)));
        }
        if (notion == FairnessNotion::EF1) {
          d = *std::min_element(after.begin(), after.end());
        } else if (notion == FairnessNotion::EFX) {
          d = *std::max_element(after.begin(), after.end());
        } else {
          for (const auto& a : after) d += a;
          d /= static_cast<long>(after.size());
        }
      }
      if (d == 0) continue;
      Rational ratio = own / d;
      if (!factor || ratio < *factor) factor = std::move(ratio);
    }
  }
  return factor;
}

OracleFactor oracle_best_factor(const Instance& instance, FairnessNotion notion,
                                const OracleLimits& limits) {
  const auto total = allocation_count(instance, limits);
  return finish_factor(instance,
                       scan_chunks<FactorChunk>(total, [&](std::uint64_t b, std::uint64_t e) {
                         return scan_factor(instance, notion, b, e);
                       }));
}

OracleFactor oracle_best_factor_serial(const Instance& instance, FairnessNotion notion,
                                       const OracleLimits& limits) {
  const auto total = allocation_count(instance, limits);
  return finish_factor(instance, {scan_factor(instance, notion, 0, total)});
}

OracleNswAllocations oracle_nsw_allocations(const Instance& instance,
                                            const OracleLimits& limits) {
  const auto total = allocation_count(instance, limits);
  return finish_nsw(instance, scan_chunks<NswChunk>(total, [&](std::uint64_t b, std::uint64_t e) {
                      return scan_nsw(instance, b, e);
                    }));
}

OracleNswAllocations oracle_nsw_allocations_serial(const Instance& instance,
                                                   const OracleLimits& limits) {
  const auto total = allocation_count(instance, limits);
  return finish_nsw(instance, {scan_nsw(instance, 0, total)});
}

}  // namespace fairdiv
