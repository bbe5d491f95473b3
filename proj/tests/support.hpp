#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "fairdiv/io.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv::testing {

/// p/q in lowest terms (the two-argument mpq constructor does not reduce).
inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Instance make_instance(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Rational>> values;
  for (const auto& row : rows) {
    std::vector<Rational> r;
    for (long v : row) r.emplace_back(v);
    values.push_back(std::move(r));
  }
  return Instance(std::move(values));
}

// Agents 0..3 over items 0..3.
inline Instance four_agents() {
  return make_instance({{8, 2, 4, 3}, {4, 2, 0, 2}, {0, 3, 2, 2}, {1, 6, 3, 9}});
}
inline Allocation four_identity() { return Allocation(4, {{0}, {1}, {2}, {3}}); }
// Product-maximal matching of four_agents(), product 4*4*3*9.
inline Allocation four_rotated() { return Allocation(4, {{2}, {0}, {1}, {3}}); }

inline Instance two_agents() { return make_instance({{3, 3, 1, 1, 1}, {5, 5, 1, 4, 3}}); }
inline Allocation two_nsw() { return Allocation(5, {{0, 1, 2}, {3, 4}}); }

inline std::string data_path(const std::string& name) {
  return std::string(FAIRDIV_TEST_DATA) + "/" + name;
}

/// Random instance with n in [agents_lo, agents_hi] and m in [max(n, items_lo), items_hi].
inline Instance random_instance(std::mt19937_64& rng, std::size_t agents_lo,
                                std::size_t agents_hi, std::size_t items_lo,
                                std::size_t items_hi, long hi = 100,
                                const Rational& zero_probability = Rational(1, 10)) {
  const std::size_t n = std::uniform_int_distribution<std::size_t>(agents_lo, agents_hi)(rng);
  const std::size_t m =
      std::uniform_int_distribution<std::size_t>(std::max(n, items_lo), items_hi)(rng);
  return Instance(random_valuations(rng, n, m, 0, hi, zero_probability));
}

/// Random complete allocation of the instance's items.
inline Allocation random_allocation(std::mt19937_64& rng, const Instance& instance) {
  std::vector<Bundle> bundles(instance.agent_count());
  std::uniform_int_distribution<std::size_t> owner(0, instance.agent_count() - 1);
  for (Item b = 0; b < instance.item_count(); ++b) bundles[owner(rng)].push_back(b);
  return Allocation(instance.item_count(), std::move(bundles));
}

/// Random allocation giving one distinct item to every agent.
inline Allocation random_matching(std::mt19937_64& rng, const Instance& instance) {
  std::vector<Item> items(instance.item_count());
  for (Item b = 0; b < items.size(); ++b) items[b] = b;
  std::shuffle(items.begin(), items.end(), rng);
  std::vector<Bundle> bundles;
  for (Agent i = 0; i < instance.agent_count(); ++i) bundles.push_back({items[i]});
  return Allocation(instance.item_count(), std::move(bundles));
}

}  // namespace fairdiv::testing
