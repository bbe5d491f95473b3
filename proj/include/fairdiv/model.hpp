#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairdiv/error.hpp"
#include "fairdiv/rational.hpp"

namespace fairdiv {

using Agent = std::size_t;
using Item = std::size_t;
using Bundle = std::vector<Item>;

/// n agents with additive, non-negative valuations over m items.
class Instance {
 public:
  /// `rows` must be agent_count rows of equal, positive length with
  /// non-negative entries.
  explicit Instance(std::vector<std::vector<Rational>> rows);

  std::size_t agent_count() const { return agents_; }
  std::size_t item_count() const { return items_; }

  /// Value of a single item to an agent. Bounds-checked.
  const Rational& value(Agent agent, Item item) const;

  /// Unchecked variant for inner loops.
  const Rational& operator()(Agent agent, Item item) const {
    return values_[agent * items_ + item];
  }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  std::size_t agents_ = 0;
  std::size_t items_ = 0;
  std::vector<Rational> values_;
};

/// n disjoint bundles over items [0, item_count). Bundles are kept sorted;
/// items not in any bundle form the remaining pool.
class Allocation {
 public:
  Allocation() = default;
  Allocation(std::size_t item_count, std::vector<Bundle> bundles);

  /// n empty bundles.
  static Allocation empty(std::size_t agent_count, std::size_t item_count);

  std::size_t agent_count() const { return bundles_.size(); }
  std::size_t item_count() const { return items_; }

  const Bundle& bundle(Agent agent) const { return bundles_.at(agent); }
  const std::vector<Bundle>& bundles() const { return bundles_; }

  /// Unallocated items in ascending order.
  std::vector<Item> remaining() const;
  bool is_complete() const;

  void give(Agent agent, Item item);
  /// Replaces the bundle of an agent wholesale (used by rotations).
  void set_bundle(Agent agent, Bundle bundle);

  /// Throws MalformedAllocation unless the shape matches the instance.
  void validate_for(const Instance& instance) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;

 private:
  std::size_t items_ = 0;
  std::vector<Bundle> bundles_;
};

enum class FairnessNotion { EF, EF1, EFX, EFR };

const char* notion_name(FairnessNotion notion);
FairnessNotion parse_notion(std::string_view text);

struct FairnessReport {
  FairnessNotion notion = FairnessNotion::EF;
  /// Empty means Unbounded.
  std::optional<Rational> factor;
  /// (envier, envied) attaining the factor.
  std::optional<std::pair<Agent, Agent>> witness;

  bool unbounded() const { return !factor.has_value(); }
  friend bool operator==(const FairnessReport&, const FairnessReport&) = default;
};

Rational bundle_value(const Instance& instance, Agent agent, const Bundle& bundle);

/// Expected value of `bundle` to `observer` after one item is removed
/// uniformly at random: (k-1)/k * value. Zero for bundles of size 0 or 1.
Rational removal_expectation(const Instance& instance, Agent observer,
                             const Bundle& bundle);

/// The right-hand side of agent i's comparison against bundle j under
/// the given notion (v_i(A_j) with the notion's removal applied).
Rational comparison_value(const Instance& instance, FairnessNotion notion,
                          Agent observer, const Bundle& bundle);

/// Largest c such that the allocation is c-approximately fair under the
/// notion: the minimum over ordered pairs with a positive comparison value
/// of own value / comparison value.
FairnessReport fairness_factor(const Instance& instance,
                               const Allocation& allocation,
                               FairnessNotion notion);

/// Threshold for meets_threshold: any rational, or one of the two
/// irrational guarantees.
using Threshold = QuadraticSurd;

bool meets_threshold(const FairnessReport& report, const Threshold& threshold);

}  // namespace fairdiv
