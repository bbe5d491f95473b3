#include "fairdiv/io.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace fairdiv {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
  if (j.is_number_integer()) bad("negative valuation " + j.dump());
  bad("valuation must be an integer or a \"p/q\" string, got " + j.dump());
}

std::size_t index_from(const json& j, const char* what) {
  if (!j.is_number_unsigned()) bad(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

json bundles_json(const Allocation& allocation) {
  json bundles = json::array();
  for (const auto& b : allocation.bundles()) bundles.push_back(b);
  return bundles;
}

Allocation allocation_from(const json& doc, std::size_t item_count) {
  if (!doc.is_object() || !doc.contains("bundles") || !doc["bundles"].is_array()) {
    bad("allocation needs a \"bundles\" array");
  }
  std::vector<Bundle> bundles;
  for (const auto& b : doc["bundles"]) {
    if (!b.is_array()) bad("every bundle must be an array of item indices");
    Bundle bundle;
    for (const auto& item : b) bundle.push_back(index_from(item, "item index"));
    bundles.push_back(std::move(bundle));
  }
  return Allocation(item_count, std::move(bundles));
}

json gen_json(const GenSpec& spec) {
  return json{{"agents", spec.agents},
              {"items", spec.items},
              {"lo", spec.lo},
              {"hi", spec.hi},
              {"zero_probability", to_string(spec.zero_probability)},
              {"seed", spec.seed}};
}

}  // namespace

void GenSpec::validate() const {
  if (agents == 0 || items == 0) bad("agents and items must be positive");
  if (lo < 0 || hi < lo) bad("value range must satisfy 0 <= lo <= hi");
  if (zero_probability < 0 || zero_probability > 1) bad("zero_probability must lie in [0, 1]");
  if (!zero_probability.get_den().fits_ulong_p()) bad("zero_probability denominator too large");
  if (solver_bound && items < agents) {
    throw Error(ErrorCode::InstanceTooSmall,
                std::to_string(items) + " items for " + std::to_string(agents) + " agents");
  }
}

std::vector<std::vector<Rational>> random_valuations(std::mt19937_64& rng,
                                                     std::size_t agents,
                                                     std::size_t items, long lo,
                                                     long hi,
                                                     const Rational& zero_probability) {
  const std::uint64_t p = zero_probability.get_num().get_ui();
  const std::uint64_t q = zero_probability.get_den().get_ui();
  std::uniform_int_distribution<std::uint64_t> coin(0, q - 1);
  std::uniform_int_distribution<long> value(lo, hi);
  std::vector<std::vector<Rational>> rows(agents, std::vector<Rational>(items));
  for (auto& row : rows) {
    for (auto& v : row) {
      const bool zero = coin(rng) < p;
      const long x = value(rng);
      v = zero ? 0 : x;
    }
  }
  return rows;
}

Instance generate_instance(const GenSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  return Instance(random_valuations(rng, spec.agents, spec.items, spec.lo, spec.hi,
                                    spec.zero_probability));
}

Instance parse_instance(std::string_view text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) bad("instance must be a JSON object");
  if (!doc.contains("n") || !doc.contains("m") || !doc.contains("valuations")) {
    bad("instance needs \"n\", \"m\" and \"valuations\"");
  }
  const std::size_t n = index_from(doc["n"], "n");
  const std::size_t m = index_from(doc["m"], "m");
  const json& rows = doc["valuations"];
  if (!rows.is_array() || rows.size() != n) bad("valuations must have n rows");
  std::vector<std::vector<Rational>> values;
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != m) bad("every valuation row must have m entries");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from(v));
    values.push_back(std::move(r));
  }
  return Instance(std::move(values));
}

std::string write_instance(const Instance& instance, const std::optional<GenSpec>& generator) {
  json doc;
  if (generator) doc["generator"] = gen_json(*generator);
  doc["n"] = instance.agent_count();
  doc["m"] = instance.item_count();
  json rows = json::array();
  for (Agent i = 0; i < instance.agent_count(); ++i) {
    json row = json::array();
    for (Item b = 0; b < instance.item_count(); ++b) row.push_back(to_string(instance(i, b)));
    rows.push_back(std::move(row));
  }
  doc["valuations"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Allocation parse_allocation(std::string_view text, const Instance& instance) {
  const json doc = parse_json(text);
  Allocation allocation = allocation_from(doc, instance.item_count());
  allocation.validate_for(instance);
  if (doc.contains("remaining")) {
    std::vector<Item> listed;
    for (const auto& item : doc["remaining"]) listed.push_back(index_from(item, "item index"));
    std::sort(listed.begin(), listed.end());
    if (listed != allocation.remaining()) {
      throw Error(ErrorCode::MalformedAllocation, "\"remaining\" disagrees with the bundles");
    }
  }
  return allocation;
}

std::string write_allocation(const Allocation& allocation) {
  json doc;
  doc["bundles"] = bundles_json(allocation);
  doc["remaining"] = allocation.remaining();
  return doc.dump() + "\n";
}

std::string write_trace(const Trace& trace) {
  std::ostringstream out;
  for (const auto& event : trace) {
    json j = std::visit(
        [](const auto& e) -> json {
          using E = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<E, trace::MatchingDone>) {
            json ranks = json::array();
            for (const auto& r : e.ranks) ranks.push_back(to_string(r));
            return {{"event", "matching_done"},
                    {"bundles", bundles_json(e.allocation)},
                    {"items", e.allocation.item_count()},
                    {"ranks", ranks}};
          } else if constexpr (std::is_same_v<E, trace::GroupsAssigned>) {
            return {{"event", "groups_assigned"},
                    {"mode", mode_name(e.groups.mode)},
                    {"groups", e.groups.group_of}};
          } else if constexpr (std::is_same_v<E, trace::Pick>) {
            return {{"event", "pick"}, {"agent", e.agent}, {"item", e.item}, {"pass", e.pass}};
          } else if constexpr (std::is_same_v<E, trace::CycleRotated>) {
            return {{"event", "cycle_rotated"}, {"cycle", e.cycle}};
          } else if constexpr (std::is_same_v<E, trace::SourcePick>) {
            return {{"event", "source_pick"}, {"agent", e.agent}, {"item", e.item}};
          } else {
            return {{"event", "invariant_checked"}, {"name", e.name}, {"pass", e.pass}};
          }
        },
        event);
    out << j.dump() << '\n';
  }
  return out.str();
}

Trace parse_trace(std::string_view text) try {
  Trace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const json j = parse_json(line);
    const std::string kind = j.value("event", "");
    if (kind == "matching_done") {
      const std::size_t items = index_from(j.at("items"), "items");
      std::vector<ExtRational> ranks;
      for (const auto& r : j.at("ranks")) {
        const auto s = r.get<std::string>();
        ranks.push_back(s == "inf" ? ExtRational::infinity() : ExtRational(parse_rational(s)));
      }
      trace.emplace_back(trace::MatchingDone{allocation_from(j, items), std::move(ranks)});
    } else if (kind == "groups_assigned") {
      trace.emplace_back(trace::GroupsAssigned{
          AgentGroups{parse_mode(j.at("mode").get<std::string>()),
                      j.at("groups").get<std::vector<int>>()}});
    } else if (kind == "pick") {
      trace.emplace_back(trace::Pick{index_from(j.at("agent"), "agent"),
                                     index_from(j.at("item"), "item"),
                                     j.at("pass").get<std::string>()});
    } else if (kind == "cycle_rotated") {
      trace.emplace_back(trace::CycleRotated{j.at("cycle").get<Cycle>()});
    } else if (kind == "source_pick") {
      trace.emplace_back(trace::SourcePick{index_from(j.at("agent"), "agent"),
                                           index_from(j.at("item"), "item")});
    } else if (kind == "invariant_checked") {
      trace.emplace_back(
          trace::InvariantChecked{j.at("name").get<std::string>(), j.at("pass").get<bool>()});
    } else {
      bad("unknown trace event '" + kind + "'");
    }
  }
  return trace;
} catch (const json::exception& e) {
  bad(std::string("malformed trace: ") + e.what());
}

}  // namespace fairdiv
