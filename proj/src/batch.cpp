#include "fairdiv/batch.hpp"

#include <random>

#include "fairdiv/io.hpp"

namespace fairdiv {

namespace {

BatchSummary summarize(std::vector<BatchOutcome> outcomes) {
  BatchSummary s;
  s.count = outcomes.size();
  double sum = 0.0;
  std::size_t bounded = 0;
  for (const auto& o : outcomes) {
    s.invariant_checks += o.invariant_checks;
    if (!o.error.empty() || !o.guarantee_met) {
      ++s.violations;
      continue;
    }
    if (!o.factor) {
      ++s.unbounded;
      continue;
    }
    ++bounded;
    sum += to_double(*o.factor);
    if (!s.min_factor || *o.factor < *s.min_factor) s.min_factor = *o.factor;
    if (!s.max_factor || *o.factor > *s.max_factor) s.max_factor = *o.factor;
  }
  s.mean_factor = bounded ? sum / static_cast<double>(bounded) : 0.0;
  s.outcomes = std::move(outcomes);
  return s;
}

}  // namespace

void BatchSpec::validate() const {
  if (agents_lo == 0 || agents_lo > agents_hi) {
    throw Error(ErrorCode::InvalidInput, "agent range must satisfy 1 <= lo <= hi");
  }
  if (items_lo > items_hi || items_hi < agents_hi) {
    throw Error(ErrorCode::InvalidInput,
                "item range must satisfy lo <= hi and hi >= the largest agent count");
  }
  if (value_lo < 0 || value_hi < value_lo) {
    throw Error(ErrorCode::InvalidInput, "value range must satisfy 0 <= lo <= hi");
  }
  if (zero_probabilities.empty()) {
    throw Error(ErrorCode::InvalidInput, "at least one zero probability is required");
  }
  for (const auto& p : zero_probabilities) {
    if (p < 0 || p > 1) throw Error(ErrorCode::InvalidInput, "zero probability outside [0, 1]");
  }
}

Instance make_batch_instance(const BatchSpec& spec, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const std::size_t n = std::uniform_int_distribution<std::size_t>(spec.agents_lo, spec.agents_hi)(rng);
  const std::size_t m =
      std::uniform_int_distribution<std::size_t>(std::max(n, spec.items_lo), spec.items_hi)(rng);
  const Rational& zero = spec.zero_probabilities[index % spec.zero_probabilities.size()];
  return Instance(random_valuations(rng, n, m, spec.value_lo, spec.value_hi, zero));
}

BatchOutcome solve_batch_instance(const BatchSpec& spec, std::size_t index) {
  const Instance instance = make_batch_instance(spec, index);
  BatchOutcome outcome;
  outcome.agents = instance.agent_count();
  outcome.items = instance.item_count();
  try {
    const SolveResult result = solve(instance, spec.mode, SolveOptions{spec.check_invariants});
    outcome.factor = result.report.factor;
    outcome.guarantee_met = result.allocation.is_complete() &&
                            meets_threshold(result.report, mode_guarantee(spec.mode));
    for (const auto& e : result.trace) {
      if (std::holds_alternative<trace::InvariantChecked>(e)) ++outcome.invariant_checks;
    }
  } catch (const std::exception& e) {
    outcome.error = e.what();
  }
  return outcome;
}

BatchSummary run_batch(const BatchSpec& spec) {
  spec.validate();
  std::vector<BatchOutcome> outcomes(spec.count);
  const auto count = static_cast<std::int64_t>(spec.count);
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t k = 0; k < count; ++k) {
    outcomes[static_cast<std::size_t>(k)] = solve_batch_instance(spec, static_cast<std::size_t>(k));
  }
  return summarize(std::move(outcomes));
}

BatchSummary run_batch_serial(const BatchSpec& spec) {
  spec.validate();
  std::vector<BatchOutcome> outcomes;
  outcomes.reserve(spec.count);
  for (std::size_t k = 0; k < spec.count; ++k) outcomes.push_back(solve_batch_instance(spec, k));
  return summarize(std::move(outcomes));
}

}  // namespace fairdiv
