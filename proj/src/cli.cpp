#include "fairdiv/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/batch.hpp"
#include "fairdiv/io.hpp"
#include "fairdiv/oracle.hpp"

namespace fairdiv {

namespace {

[[noreturn]] void usage(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

std::string read_text(const std::string& path, std::istream& in) {
  std::ostringstream buffer;
  if (path == "-") {
    buffer << in.rdbuf();
    return buffer.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) usage("cannot read " + path);
  buffer << file.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) usage("cannot write " + path);
  file << text;
  if (!file) usage("failed writing " + path);
}

std::string decimal(const Rational& value) {
  std::ostringstream s;
  s << std::setprecision(10) << to_double(value);
  return s.str();
}

std::string describe_factor(const std::optional<Rational>& factor) {
  if (!factor) return "unbounded";
  return to_string(*factor) + " (" + decimal(*factor) + ")";
}

Rational parse_probability(const std::string& text) {
  return text.find('/') != std::string::npos ? parse_rational(text) : parse_decimal(text);
}

Threshold parse_threshold(const std::string& text) {
  if (text == "sqrt3-1") return Threshold::sqrt3_minus_1();
  if (text == "phi-1") return Threshold::golden_ratio_minus_1();
  return Threshold::of(parse_probability(text));
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text, const char* what) {
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const std::size_t v = std::stoul(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return {v, v};
    }
    const std::string a = text.substr(0, colon), b = text.substr(colon + 1);
    const std::size_t lo = std::stoul(a, &used);
    if (used != a.size()) throw std::invalid_argument(text);
    const std::size_t hi = std::stoul(b, &used);
    if (used != b.size()) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    usage(std::string(what) + " must look like LO:HI, got '" + text + "'");
  }
}

bool parse_switch(const std::string& text) {
  if (text == "on") return true;
  if (text == "off") return false;
  usage("expected on or off, got '" + text + "'");
}

struct SolveFlags {
  std::string algorithm = "efr", input, output = "-", trace, check = "on";
};

int cmd_solve(const SolveFlags& f, std::istream& in, std::ostream& out, std::ostream& err) {
  const Mode mode = parse_mode(f.algorithm);
  const bool check = parse_switch(f.check);
  const Instance instance = parse_instance(read_text(f.input, in));
  const SolveResult result = solve(instance, mode, SolveOptions{check});

  write_text(f.output, write_allocation(result.allocation), out);
  if (!f.trace.empty()) write_text(f.trace, write_trace(result.trace), out);

  std::ostream& report = f.output == "-" || f.trace == "-" ? err : out;
  const bool met = meets_threshold(result.report, mode_guarantee(mode));
  report << "algorithm: " << mode_name(mode) << '\n'
         << "factor: " << describe_factor(result.report.factor) << '\n'
         << "guarantee: " << mode_guarantee(mode).describe() << ' ' << (met ? "met" : "missed")
         << '\n';
  return met ? 0 : 1;
}

struct VerifyFlags {
  std::string input, allocation, notion = "efr", threshold = "1";
};

int cmd_verify(const VerifyFlags& f, std::istream& in, std::ostream& out) {
  if (f.input == "-" && f.allocation == "-") usage("only one of --input/--allocation may be '-'");
  const Instance instance = parse_instance(read_text(f.input, in));
  const Allocation allocation = parse_allocation(read_text(f.allocation, in), instance);
  const FairnessNotion notion = parse_notion(f.notion);
  const Threshold threshold = parse_threshold(f.threshold);
  const FairnessReport report = fairness_factor(instance, allocation, notion);
  const bool met = meets_threshold(report, threshold);
  out << "notion: " << notion_name(notion) << '\n'
      << "factor: " << describe_factor(report.factor) << '\n';
  if (report.witness) out << "witness: " << report.witness->first << ' ' << report.witness->second << '\n';
  out << "threshold: " << threshold.describe() << '\n' << "result: " << (met ? "pass" : "fail") << '\n';
  return met ? 0 : 1;
}

struct GenFlags {
  GenSpec spec;
  std::string zero_probability = "0", output = "-";
};

int cmd_gen(GenFlags f, std::ostream& out) {
  f.spec.zero_probability = parse_probability(f.zero_probability);
  const Instance instance = generate_instance(f.spec);
  write_text(f.output, write_instance(instance, f.spec), out);
  return 0;
}

struct BenchFlags {
  std::size_t count = 1000;
  std::string agents = "2:6", items = "2:12", values = "0:100", algorithm = "efr", check = "on";
  std::vector<std::string> zero_probabilities;
  std::uint64_t seed = 1;
  bool serial = false;
};

int cmd_bench(const BenchFlags& f, std::ostream& out) {
  BatchSpec spec;
  spec.count = f.count;
  std::tie(spec.agents_lo, spec.agents_hi) = parse_range(f.agents, "--agents-range");
  std::tie(spec.items_lo, spec.items_hi) = parse_range(f.items, "--items-range");
  const auto [vlo, vhi] = parse_range(f.values, "--values-range");
  spec.value_lo = static_cast<long>(vlo);
  spec.value_hi = static_cast<long>(vhi);
  if (!f.zero_probabilities.empty()) {
    spec.zero_probabilities.clear();
    for (const auto& p : f.zero_probabilities) spec.zero_probabilities.push_back(parse_probability(p));
  }
  spec.seed = f.seed;
  spec.mode = parse_mode(f.algorithm);
  spec.check_invariants = parse_switch(f.check);

  const BatchSummary s = f.serial ? run_batch_serial(spec) : run_batch(spec);
  auto factor_json = [](const std::optional<Rational>& r) -> nlohmann::json {
    return r ? nlohmann::json(to_string(*r)) : nlohmann::json(nullptr);
  };
  nlohmann::json doc{{"algorithm", mode_name(spec.mode)},
                     {"count", s.count},
                     {"seed", spec.seed},
                     {"unbounded", s.unbounded},
                     {"min_factor", factor_json(s.min_factor)},
                     {"mean_factor", s.mean_factor},
                     {"max_factor", factor_json(s.max_factor)},
                     {"guarantee", mode_guarantee(spec.mode).describe()},
                     {"invariant_checks", s.invariant_checks},
                     {"violations", s.violations}};
  nlohmann::json failures = nlohmann::json::array();
  for (std::size_t k = 0; k < s.outcomes.size(); ++k) {
    const auto& o = s.outcomes[k];
    if (!o.error.empty() || !o.guarantee_met) {
      failures.push_back({{"index", k}, {"error", o.error}});
    }
  }
  if (!failures.empty()) doc["failures"] = failures;
  out << doc.dump() << '\n';
  return s.violations == 0 ? 0 : 1;
}

struct OracleFlags {
  std::string input, check, allocation;
  std::optional<std::size_t> agent;
  OracleLimits limits;
};

int cmd_oracle(const OracleFlags& f, std::istream& in, std::ostream& out) {
  if (f.input == "-" && f.allocation == "-") usage("only one of --input/--allocation may be '-'");
  const Instance instance = parse_instance(read_text(f.input, in));
  auto allocation = [&] {
    if (f.allocation.empty()) usage("--check " + f.check + " needs --allocation");
    return parse_allocation(read_text(f.allocation, in), instance);
  };

  if (f.check == "nsw-matching") {
    const OracleMatching r = oracle_nsw_matching(instance, f.limits);
    out << "positive_count: " << r.positive_count << '\n' << "product: " << to_string(r.product) << '\n'
        << "assignment:";
    for (Item b : r.assignment) out << ' ' << b;
    out << '\n';
  } else if (f.check == "best-efr" || f.check == "best-efx") {
    const FairnessNotion notion = f.check == "best-efr" ? FairnessNotion::EFR : FairnessNotion::EFX;
    const OracleFactor r = oracle_best_factor(instance, notion, f.limits);
    out << "factor: " << describe_factor(r.factor) << '\n'
        << "witness: " << write_allocation(r.witness);
  } else if (f.check == "improving-cycle") {
    const auto r = oracle_improving_cycle(instance, allocation(), f.limits);
    if (!r) {
      out << "cycle: none\n";
    } else {
      out << "cycle:";
      for (Agent a : r->cycle) out << ' ' << a;
      out << '\n' << "product: " << to_string(r->product) << '\n';
    }
  } else if (f.check == "envy-rank") {
    const Allocation a = allocation();
    if (f.agent) {
      if (*f.agent >= instance.agent_count()) {
        throw Error(ErrorCode::IndexOutOfRange, "agent " + std::to_string(*f.agent));
      }
      out << "rank: " << to_string(oracle_envy_rank(instance, a, *f.agent, f.limits)) << '\n';
    } else {
      for (Agent i = 0; i < instance.agent_count(); ++i) {
        out << "rank " << i << ": " << to_string(oracle_envy_rank(instance, a, i, f.limits)) << '\n';
      }
    }
  } else {
    usage("unknown oracle check '" + f.check + "'");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Fair division of indivisible goods with exact arithmetic", "fairdiv"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "Compute an approximately fair allocation");
  solve_cmd->add_option("--algorithm", solve_flags.algorithm, "efr or efx")->capture_default_str();
  solve_cmd->add_option("--input", solve_flags.input, "Instance file or -")->required();
  solve_cmd->add_option("--output", solve_flags.output, "Allocation file or -")->capture_default_str();
  solve_cmd->add_option("--trace", solve_flags.trace, "Trace file (one JSON event per line)");
  solve_cmd->add_option("--check", solve_flags.check, "Verify intermediate invariants: on or off")
      ->capture_default_str();

  VerifyFlags verify_flags;
  auto* verify_cmd = app.add_subcommand("verify", "Measure the fairness factor of an allocation");
  verify_cmd->add_option("--input", verify_flags.input, "Instance file or -")->required();
  verify_cmd->add_option("--allocation", verify_flags.allocation, "Allocation file or -")->required();
  verify_cmd->add_option("--notion", verify_flags.notion, "ef, ef1, efx or efr")->capture_default_str();
  verify_cmd->add_option("--threshold", verify_flags.threshold,
                         "Decimal, p/q, sqrt3-1 or phi-1")
      ->capture_default_str();

  GenFlags gen_flags;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--agents", gen_flags.spec.agents)->capture_default_str();
  gen_cmd->add_option("--items", gen_flags.spec.items)->capture_default_str();
  gen_cmd->add_option("--lo", gen_flags.spec.lo)->capture_default_str();
  gen_cmd->add_option("--hi", gen_flags.spec.hi)->capture_default_str();
  gen_cmd->add_option("--zero-probability", gen_flags.zero_probability, "Decimal or p/q")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen_flags.spec.seed)->capture_default_str();
  gen_cmd->add_flag("--solver-bound", gen_flags.spec.solver_bound, "Require items >= agents");
  gen_cmd->add_option("--output", gen_flags.output, "Instance file or -")->capture_default_str();

  BenchFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "Solve a seeded batch of random instances");
  bench_cmd->add_option("--count", bench_flags.count)->capture_default_str();
  bench_cmd->add_option("--agents-range", bench_flags.agents, "LO:HI")->capture_default_str();
  bench_cmd->add_option("--items-range", bench_flags.items, "LO:HI")->capture_default_str();
  bench_cmd->add_option("--values-range", bench_flags.values, "LO:HI")->capture_default_str();
  bench_cmd->add_option("--zero-probability", bench_flags.zero_probabilities,
                        "Cycled by instance index (default 0 and 0.1)");
  bench_cmd->add_option("--seed", bench_flags.seed)->capture_default_str();
  bench_cmd->add_option("--algorithm", bench_flags.algorithm, "efr or efx")->capture_default_str();
  bench_cmd->add_option("--check", bench_flags.check, "on or off")->capture_default_str();
  bench_cmd->add_flag("--serial", bench_flags.serial, "Solve on one thread");

  OracleFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
  oracle_cmd->add_option("--input", oracle_flags.input, "Instance file or -")->required();
  oracle_cmd
      ->add_option("--check", oracle_flags.check,
                   "nsw-matching, best-efr, best-efx, improving-cycle or envy-rank")
      ->required();
  oracle_cmd->add_option("--allocation", oracle_flags.allocation, "Allocation file or -");
  oracle_cmd->add_option("--agent", oracle_flags.agent, "Agent for envy-rank (default: all)");
  oracle_cmd->add_option("--max-agents", oracle_flags.limits.max_agents)->capture_default_str();
  oracle_cmd->add_option("--max-items", oracle_flags.limits.max_items)->capture_default_str();
  oracle_cmd->add_option("--max-allocations", oracle_flags.limits.max_allocations)
      ->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve_cmd) return cmd_solve(solve_flags, in, out, err);
    if (*verify_cmd) return cmd_verify(verify_flags, in, out);
    if (*gen_cmd) return cmd_gen(gen_flags, out);
    if (*bench_cmd) return cmd_bench(bench_flags, out);
    if (*oracle_cmd) return cmd_oracle(oracle_flags, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::InternalGuaranteeViolated ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace fairdiv
