#include "fairdiv/model.hpp"

#include <algorithm>

namespace fairdiv {

Instance::Instance(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) throw Error(ErrorCode::InvalidInput, "no agents");
  agents_ = rows.size();
  items_ = rows.front().size();
  if (items_ == 0) throw Error(ErrorCode::InvalidInput, "no items");
  values_.reserve(agents_ * items_);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != items_) {
      throw Error(ErrorCode::InvalidInput,
                  "row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " entries, expected " +
                      std::to_string(items_));
    }
    for (auto& v : rows[i]) {
      if (sgn(v) < 0) {
        throw Error(ErrorCode::InvalidInput, "negative valuation " + to_string(v));
      }
      v.canonicalize();
      values_.push_back(std::move(v));
    }
  }
}

const Rational& Instance::value(Agent agent, Item item) const {
  if (agent >= agents_ || item >= items_) {
    throw Error(ErrorCode::IndexOutOfRange,
                "value(" + std::to_string(agent) + ", " + std::to_string(item) +
                    ") on a " + std::to_string(agents_) + "x" +
                    std::to_string(items_) + " instance");
  }
  return (*this)(agent, item);
}

Allocation::Allocation(std::size_t item_count, std::vector<Bundle> bundles)
    : items_(item_count), bundles_(std::move(bundles)) {
  std::vector<char> seen(items_, 0);
  for (auto& b : bundles_) {
    std::sort(b.begin(), b.end());
    for (Item item : b) {
      if (item >= items_) {
        throw Error(ErrorCode::MalformedAllocation,
                    "item " + std::to_string(item) + " out of range");
      }
      if (seen[item]) {
        throw Error(ErrorCode::MalformedAllocation,
                    "item " + std::to_string(item) + " allocated twice");
      }
      seen[item] = 1;
    }
  }
}

Allocation Allocation::empty(std::size_t agent_count, std::size_t item_count) {
  return Allocation(item_count, std::vector<Bundle>(agent_count));
}

std::vector<Item> Allocation::remaining() const {
  std::vector<char> used(items_, 0);
  for (const auto& b : bundles_) {
    for (Item item : b) used[item] = 1;
  }
  std::vector<Item> pool;
  for (Item item = 0; item < items_; ++item) {
    if (!used[item]) pool.push_back(item);
  }
  return pool;
}

bool Allocation::is_complete() const {
  std::size_t total = 0;
  for (const auto& b : bundles_) total += b.size();
  return total == items_;
}

void Allocation::give(Agent agent, Item item) {
  if (agent >= bundles_.size() || item >= items_) {
    throw Error(ErrorCode::MalformedAllocation, "give out of range");
  }
  for (const auto& b : bundles_) {
    if (std::binary_search(b.begin(), b.end(), item)) {
      throw Error(ErrorCode::MalformedAllocation,
                  "item " + std::to_string(item) + " already allocated");
    }
  }
  auto& b = bundles_[agent];
  b.insert(std::upper_bound(b.begin(), b.end(), item), item);
}

void Allocation::set_bundle(Agent agent, Bundle bundle) {
  std::sort(bundle.begin(), bundle.end());
  bundles_.at(agent) = std::move(bundle);
}

void Allocation::validate_for(const Instance& instance) const {
  if (bundles_.size() != instance.agent_count() ||
      items_ != instance.item_count()) {
    throw Error(ErrorCode::MalformedAllocation,
                "allocation shape " + std::to_string(bundles_.size()) + "x" +
                    std::to_string(items_) + " does not match instance " +
                    std::to_string(instance.agent_count()) + "x" +
                    std::to_string(instance.item_count()));
  }
}

const char* notion_name(FairnessNotion notion) {
  switch (notion) {
    case FairnessNotion::EF: return "ef";
    case FairnessNotion::EF1: return "ef1";
    case FairnessNotion::EFX: return "efx";
    case FairnessNotion::EFR: return "efr";
  }
  return "?";
}

FairnessNotion parse_notion(std::string_view text) {
  for (auto n : {FairnessNotion::EF, FairnessNotion::EF1, FairnessNotion::EFX,
                 FairnessNotion::EFR}) {
    if (text == notion_name(n)) return n;
  }
  throw Error(ErrorCode::InvalidInput, "unknown notion '" + std::string(text) + "'");
}

Rational bundle_value(const Instance& instance, Agent agent, const Bundle& bundle) {
  Rational sum = 0;
  for (Item item : bundle) sum += instance.value(agent, item);
  return sum;
}

Rational removal_expectation(const Instance& instance, Agent observer,
                             const Bundle& bundle) {
  const Rational total = bundle_value(instance, observer, bundle);
  const auto k = static_cast<long>(bundle.size());
  if (k <= 1) return 0;
  Rational r = total * Rational(k - 1, k);
  r.canonicalize();
  return r;
}

Rational comparison_value(const Instance& instance, FairnessNotion notion,
                          Agent observer, const Bundle& bundle) {
  if (notion == FairnessNotion::EFR) {
    return removal_expectation(instance, observer, bundle);
  }
  const Rational total = bundle_value(instance, observer, bundle);
  if (notion == FairnessNotion::EF || bundle.empty()) return total;
  Rational lo = instance(observer, bundle.front());
  Rational hi = lo;
  for (Item item : bundle) {
    const Rational& v = instance(observer, item);
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return notion == FairnessNotion::EF1 ? Rational(total - hi) : Rational(total - lo);
}

FairnessReport fairness_factor(const Instance& instance,
                               const Allocation& allocation,
                               FairnessNotion notion) {
  allocation.validate_for(instance);
  const std::size_t n = instance.agent_count();
  FairnessReport report;
  report.notion = notion;
  for (Agent i = 0; i < n; ++i) {
    const Rational own = bundle_value(instance, i, allocation.bundle(i));
    for (Agent j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational d = comparison_value(instance, notion, i, allocation.bundle(j));
      if (sgn(d) == 0) continue;
      Rational ratio = own / d;
      if (!report.factor || ratio < *report.factor) {
        report.factor = std::move(ratio);
        report.witness = std::make_pair(i, j);
      }
    }
  }
  return report;
}

bool meets_threshold(const FairnessReport& report, const Threshold& threshold) {
  if (report.unbounded()) return true;
  return at_least(*report.factor, threshold, Rational(1));
}

}  // namespace fairdiv
