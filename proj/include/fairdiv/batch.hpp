#pragma once

// Seeded batches of random instances pushed through a solver.
//
// run_batch solves the instances concurrently (OpenMP, dynamic schedule);
// run_batch_serial is the plain loop kept as the reference. Results are
// stored by instance index and summarized in index order, so both return
// the same BatchSummary for the same settings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fairdiv/algorithms.hpp"

namespace fairdiv {

struct BatchSpec {
  std::size_t count = 1000;
  std::size_t agents_lo = 2, agents_hi = 6;
  /// Item counts are drawn from [max(agents, items_lo), items_hi].
  std::size_t items_lo = 2, items_hi = 12;
  long value_lo = 0, value_hi = 100;
  /// Instance k uses zero_probabilities[k % size].
  std::vector<Rational> zero_probabilities{Rational(0), Rational(1, 10)};
  std::uint64_t seed = 1;
  Mode mode = Mode::EFR;
  bool check_invariants = true;

  void validate() const;
};

/// Instance `index` of the batch; depends only on the settings and index.
Instance make_batch_instance(const BatchSpec& spec, std::size_t index);

struct BatchOutcome {
  std::size_t agents = 0;
  std::size_t items = 0;
  /// Empty: Unbounded.
  std::optional<Rational> factor;
  bool guarantee_met = false;
  std::size_t invariant_checks = 0;
  /// Set when the solve threw (a guarantee or invariant failure).
  std::string error;
};

struct BatchSummary {
  std::size_t count = 0;
  std::size_t unbounded = 0;
  std::optional<Rational> min_factor;
  std::optional<Rational> max_factor;
  double mean_factor = 0.0;  // over bounded outcomes
  std::size_t invariant_checks = 0;
  std::size_t violations = 0;
  std::vector<BatchOutcome> outcomes;

  friend bool operator==(const BatchSummary&, const BatchSummary&) = default;
};

inline bool operator==(const BatchOutcome& a, const BatchOutcome& b) {
  return a.agents == b.agents && a.items == b.items && a.factor == b.factor &&
         a.guarantee_met == b.guarantee_met && a.invariant_checks == b.invariant_checks &&
         a.error == b.error;
}

BatchOutcome solve_batch_instance(const BatchSpec& spec, std::size_t index);

BatchSummary run_batch(const BatchSpec& spec);
BatchSummary run_batch_serial(const BatchSpec& spec);

}  // namespace fairdiv
