#pragma once

// File formats. All documents are JSON; rationals are written as "p" or
// "p/q" strings so that nothing persisted ever passes through floating
// point. Agents and items are 0-indexed.
//
//   instance    {"n": 2, "m": 5, "valuations": [["3", "3", "1", "1", "1"], ...],
//                "generator": {...}}            (generator is optional)
//   allocation  {"bundles": [[0, 1, 2], [3, 4]], "remaining": []}
//   trace       one JSON object per line, keyed by "event"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/model.hpp"

namespace fairdiv {

struct GenSpec {
  std::size_t agents = 2;
  std::size_t items = 2;
  long lo = 0;
  long hi = 100;
  Rational zero_probability{0};
  std::uint64_t seed = 0;
  /// Reject items < agents.
  bool solver_bound = false;

  void validate() const;
};

/// Each entry is 0 with probability zero_probability, else uniform in
/// [lo, hi]. Deterministic for a fixed engine state.
std::vector<std::vector<Rational>> random_valuations(std::mt19937_64& rng,
                                                     std::size_t agents,
                                                     std::size_t items, long lo,
                                                     long hi,
                                                     const Rational& zero_probability);

Instance generate_instance(const GenSpec& spec);

Instance parse_instance(std::string_view text);
std::string write_instance(const Instance& instance,
                           const std::optional<GenSpec>& generator = std::nullopt);

/// Validates shape and consistency against the instance.
Allocation parse_allocation(std::string_view text, const Instance& instance);
std::string write_allocation(const Allocation& allocation);

std::string write_trace(const Trace& trace);
Trace parse_trace(std::string_view text);

}  // namespace fairdiv
