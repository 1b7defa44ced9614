#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/experiments.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instances.hpp"
#include "fairdiv/oracle.hpp"

namespace fairdiv::cli {

namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string format = "text";
  bool structured() const { return format == "structured"; }
};

void add_format(CLI::App* cmd, Common& common) {
  cmd->add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw UsageError("cannot write '" + path + "'");
}

InstanceFile load_instance(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_instance(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Allocation load_allocation(const std::string& path, const Instance& inst) {
  const std::string text = read_file(path);
  try {
    return parse_allocation(text, inst);
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

json rational_json(const Rational& r) { return json{{"exact", r.str()}, {"decimal", r.decimal(6)}}; }

std::string rational_text(const Rational& r) { return r.str() + " (" + r.decimal(6) + ")"; }

json bundle_json(const Bundle& b) {
  json goods = json::array();
  for (GoodId g : b.goods) goods.push_back(g + 1);
  json fractions = json::array();
  for (const auto& f : b.fractions) fractions.push_back(f.str());
  return json{{"goods", goods}, {"fractions", fractions}};
}

json allocation_json(const Allocation& a) {
  json out = json::array();
  for (const auto& b : a.bundles) out.push_back(bundle_json(b));
  return out;
}

std::vector<Notion> parse_notions(const std::string& text) {
  if (text == "all" || text == "ALL") return {kAllNotions.begin(), kAllNotions.end()};
  std::vector<Notion> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_notion(item));
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("no notion given");
  return out;
}

Notion single_notion(const std::string& text) {
  const std::vector<Notion> v = parse_notions(text);
  if (v.size() != 1) throw UsageError("exactly one notion expected");
  return v.front();
}

double resolve_budget(const std::optional<double>& flag) {
  if (flag) {
    if (!(*flag > 0)) throw UsageError("--budget must be positive");
    return *flag;
  }
  if (const char* env = std::getenv("FAIRDIV_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0)) throw UsageError("FAIRDIV_BUDGET must be a positive number");
    return v;
  }
  return kDefaultBudget;
}

std::string witness_text(const Violation& v) {
  std::string s = "agent " + std::to_string(v.envious + 1) + " envies agent " + std::to_string(v.envied + 1);
  if (v.good) s += " even without g" + std::to_string(*v.good + 1);
  return s;
}

// ---------------------------------------------------------------------------
// check

struct CheckArgs {
  Common common;
  std::string instance, allocation, notion = "all";
};

int cmd_check(const CheckArgs& args, std::ostream& out) {
  const InstanceFile file = load_instance(args.instance);
  const Instance& inst = file.instance;
  const Allocation a = load_allocation(args.allocation, inst);
  const std::vector<Notion> notions = parse_notions(args.notion);
  if (!is_feasible(inst, a)) throw UsageError("allocation is infeasible for this instance");

  bool all = true;
  json results = json::array();
  std::ostringstream text;
  for (Notion n : notions) {
    const CheckResult r = check(inst, a, n);
    all = all && r.satisfied;
    json entry{{"notion", std::string(to_string(n))}, {"pass", r.satisfied}};
    text << (r.satisfied ? "PASS " : "FAIL ") << to_string(n);
    if (r.witness) {
      json w{{"envious", r.witness->envious + 1}, {"envied", r.witness->envied + 1}};
      if (r.witness->good) w["good"] = *r.witness->good + 1;
      entry["witness"] = w;
      text << "  " << witness_text(*r.witness);
    }
    text << '\n';
    results.push_back(entry);
  }
  if (args.common.structured()) {
    out << json{{"command", "check"},
                {"complete", is_complete(inst, a)},
                {"welfare", rational_json(social_welfare(inst, a))},
                {"results", results}}
               .dump(2)
        << '\n';
  } else {
    out << text.str();
  }
  return all ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  Common common;
  std::string instance, algo, out_path;
};

struct Guarantee {
  std::string statement;
  Rational lhs, rhs;
  bool holds() const { return lhs >= rhs; }
};

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const InstanceFile file = load_instance(args.instance);
  const Instance& inst = file.instance;
  const long n = static_cast<long>(inst.agents());
  const Rational total = total_utility_sum(inst);
  const Rational opt = optimal_welfare(inst);

  Allocation a;
  std::optional<std::vector<GoodId>> pool;
  Guarantee g;
  if (args.algo == "cutchoose") {
    a = cut_and_choose(inst);
    g = {"2 SW >= sum of total utilities", Rational(2) * social_welfare(inst, a), total};
  } else if (args.algo == "ef1two") {
    a = ef1_two_agent_scaled(inst);
    g = {"8 SW >= 7 OPT", Rational(8) * social_welfare(inst, a), Rational(7) * opt};
  } else if (args.algo == "efxmabs") {
    PipelineTrace trace = efxm_abs(inst);
    a = std::move(trace.final_allocation);
    pool = std::move(trace.pool);
    g = {"(2n + 1) SW >= sum of total utilities", Rational(2 * n + 1) * social_welfare(inst, a), total};
  } else {
    a = efm_complete(inst);
    g = {"2n SW >= sum of total utilities", Rational(2 * n) * social_welfare(inst, a), total};
  }
  const Rational sw = social_welfare(inst, a);
  const std::string allocation_text = serialize_allocation(a, inst);
  if (!args.out_path.empty()) write_file(args.out_path, allocation_text);

  std::vector<std::string> passed, failed;
  for (Notion nt : kAllNotions) (check(inst, a, nt) ? passed : failed).emplace_back(to_string(nt));

  if (args.common.structured()) {
    json j{{"command", "solve"},
           {"algorithm", args.algo},
           {"allocation", allocation_json(a)},
           {"complete", is_complete(inst, a)},
           {"welfare", rational_json(sw)},
           {"optimum", rational_json(opt)},
           {"ratio", sw.is_zero() ? json(nullptr) : rational_json(opt / sw)},
           {"passed", passed},
           {"failed", failed},
           {"guarantee", {{"statement", g.statement}, {"lhs", g.lhs.str()}, {"rhs", g.rhs.str()}, {"holds", g.holds()}}}};
    if (pool) {
      json p = json::array();
      for (GoodId x : *pool) p.push_back(x + 1);
      j["pool"] = p;
    }
    out << j.dump(2) << '\n';
  } else {
    out << "algorithm: " << args.algo << '\n';
    out << "allocation: " << describe(a) << (is_complete(inst, a) ? " (complete)" : " (partial)") << '\n';
    if (pool) {
      out << "pool:";
      if (pool->empty()) out << " (empty)";
      for (GoodId x : *pool) out << " g" << x + 1;
      out << '\n';
    }
    out << "SW: " << rational_text(sw) << '\n';
    out << "OPT: " << rational_text(opt) << '\n';
    out << "ratio: " << (sw.is_zero() ? std::string("undefined") : rational_text(opt / sw)) << '\n';
    out << "passes:";
    for (const auto& s : passed) out << ' ' << s;
    out << "\nfails:";
    for (const auto& s : failed) out << ' ' << s;
    out << '\n';
    out << (g.holds() ? "PASS " : "FAIL ") << g.statement << ": " << g.lhs.str() << " vs " << g.rhs.str() << '\n';
    if (args.out_path.empty()) out << allocation_text;
  }
  return g.holds() ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// price

struct PriceArgs {
  Common common;
  std::string instance, notion = "EF1";
  std::size_t level = 1;
  bool partial = false, complete = false;
  std::optional<double> budget;
};

// The worst-case price known for the instance shape, if any.
std::optional<std::pair<Rational, std::string>> known_bound(const Instance& inst, Notion n) {
  if (inst.agents() != 2) return std::nullopt;
  const bool scaled = inst.is_scaled();
  if (n == Notion::EF1 && scaled && inst.divisible_count() == 0) {
    return std::pair{Rational(8, 7), std::string("two scaled agents, indivisible goods")};
  }
  if (n == Notion::EFX || n == Notion::EFM || n == Notion::EFXM) {
    if (scaled) return std::pair{Rational(3, 2), std::string("two scaled agents")};
    return std::pair{Rational(2), std::string("two agents")};
  }
  return std::nullopt;
}

int cmd_price(const PriceArgs& args, std::ostream& out) {
  if (args.partial && args.complete) throw UsageError("--partial and --complete are exclusive");
  const InstanceFile file = load_instance(args.instance);
  const Instance& inst = file.instance;
  OracleConfig cfg = default_config(single_notion(args.notion), args.level);
  if (args.partial) cfg.allow_partial = true;
  if (args.complete) cfg.allow_partial = false;
  cfg.budget = resolve_budget(args.budget);

  FairOptimum best;
  try {
    best = best_fair_welfare(inst, cfg);
  } catch (const BudgetError& e) {
    throw UsageError(std::string(e.what()) + "; try a smaller --level or raise --budget");
  } catch (const InfeasibleError& e) {
    if (args.common.structured()) {
      out << json{{"command", "price"}, {"notion", std::string(to_string(cfg.notion))}, {"feasible", false}}.dump(2)
          << '\n';
    } else {
      out << e.what() << '\n';
    }
    return kViolation;
  }
  const Rational opt = optimal_welfare(inst);
  const std::optional<Rational> ratio = best.welfare.is_zero() ? std::nullopt : std::optional(opt / best.welfare);
  const auto bound = known_bound(inst, cfg.notion);
  const bool within = !bound || !ratio || *ratio <= bound->first;

  if (args.common.structured()) {
    json j{{"command", "price"},
           {"notion", std::string(to_string(cfg.notion))},
           {"partial", cfg.allow_partial},
           {"level", best.level},
           {"discretized", best.discretized},
           {"feasible", true},
           {"optimum", rational_json(opt)},
           {"best_fair", rational_json(best.welfare)},
           {"ratio", ratio ? rational_json(*ratio) : json(nullptr)},
           {"witness", allocation_json(best.witness)}};
    if (bound) j["bound"] = {{"value", bound->first.str()}, {"applies_to", bound->second}, {"holds", within}};
    out << j.dump(2) << '\n';
  } else {
    out << "notion: " << to_string(cfg.notion) << (cfg.allow_partial ? " (partial allowed)" : " (complete only)");
    if (best.discretized) out << ", " << best.level << "-discretized";
    out << '\n';
    out << "OPT: " << rational_text(opt) << '\n';
    out << "best fair: " << rational_text(best.welfare) << '\n';
    out << "ratio: " << (ratio ? rational_text(*ratio) : std::string("undefined (best fair welfare is 0)")) << '\n';
    out << "witness: " << describe(best.witness) << '\n';
    if (bound) {
      out << (within ? "PASS" : "FAIL") << " ratio <= " << bound->first.str() << " (" << bound->second << ")\n";
    }
  }
  if (!ratio) return kViolation;
  return within ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// reproduce

struct ReproduceArgs {
  Common common;
  std::string bound;
  std::uint64_t seed = ExperimentOptions{}.seed;
  std::optional<double> budget;
};

std::string bound_claim(const std::string& bound) {
  if (bound == "ef1-87") return "the price of EF1 for two scaled agents is at most 8/7";
  if (bound == "efm-32") return "the price of EFM for two scaled agents is 3/2";
  if (bound == "unscaled-2") return "for two unscaled agents the price of EFX, EFM and EFXM is at most 2";
  if (bound == "efxm-abs") return "partial EFXM keeps 1/(2n+1), complete EFM 1/(2n) of the total utility";
  return "EFM and Pareto optimality are incompatible";
}

int cmd_reproduce(const ReproduceArgs& args, std::ostream& out) {
  ExperimentOptions opts;
  opts.seed = args.seed;
  opts.budget = resolve_budget(args.budget);
  const std::vector<int> ids = criteria_for_bound(args.bound);
  bool all = true;
  json runs = json::array();
  if (!args.common.structured()) out << "bound " << args.bound << ": " << bound_claim(args.bound) << '\n';
  for (int id : ids) {
    const ExperimentReport r = run_criterion(id, opts);
    all = all && r.passed;
    if (args.common.structured()) {
      runs.push_back({{"experiment", id},
                      {"title", r.title},
                      {"checked", r.bound},
                      {"observed", r.observed},
                      {"verdict", r.passed ? "PASS" : "FAIL"},
                      {"evidence", r.evidence},
                      {"seconds", r.seconds}});
      continue;
    }
    out << "\nexperiment " << id << ": " << r.title << '\n';
    out << "  checked:  " << r.bound << '\n';
    out << "  observed: " << r.observed << '\n';
    for (const auto& e : r.evidence) {
      std::istringstream lines(e);
      for (std::string line; std::getline(lines, line);) out << "  | " << line << '\n';
    }
    out << "  verdict:  " << (r.passed ? "PASS" : "FAIL") << '\n';
  }
  if (args.common.structured()) {
    out << json{{"command", "reproduce"}, {"bound", args.bound}, {"claim", bound_claim(args.bound)}, {"runs", runs}}
               .dump(2)
        << '\n';
  }
  return all ? kOk : kViolation;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
  Common common;
  std::string notion = "EF1", out_path;
  std::size_t agents = 2, max_indivisible = 4, divisible = 0, level = 1, trials = 1000;
  bool unscaled = false, partial = false, complete = false;
  std::uint64_t seed = 1;
  std::optional<double> budget;
};

int cmd_search(const SearchArgs& args, std::ostream& out) {
  if (args.partial && args.complete) throw UsageError("--partial and --complete are exclusive");
  SearchConfig cfg;
  cfg.oracle = default_config(single_notion(args.notion), args.level);
  if (args.partial) cfg.oracle.allow_partial = true;
  if (args.complete) cfg.oracle.allow_partial = false;
  cfg.oracle.budget = resolve_budget(args.budget);
  cfg.space = {args.agents, args.max_indivisible, args.divisible, !args.unscaled};
  cfg.trials = args.trials;
  cfg.seed = args.seed;
  // Fail fast on a search space the oracle cannot enumerate.
  const Instance probe = random_instance(args.agents, args.max_indivisible, args.divisible, false, 0);
  const double classes = allocation_classes(probe, cfg.oracle);
  if (classes > cfg.oracle.budget) {
    throw UsageError("each instance needs up to " + std::to_string(classes) +
                     " allocations, above the budget; try smaller dimensions or --level");
  }
  const SearchResult res = search_worst_case(cfg);
  const std::string instance_text =
      serialize_instance(InstanceFile{res.instance, std::string("search-worst"),
                                      "search notion=" + std::string(to_string(cfg.oracle.notion)) +
                                          " seed=" + std::to_string(args.seed) + " trials=" + std::to_string(args.trials)});
  if (!args.out_path.empty()) write_file(args.out_path, instance_text);
  if (args.common.structured()) {
    out << json{{"command", "search"},
                {"notion", std::string(to_string(cfg.oracle.notion))},
                {"evaluated", res.evaluated},
                {"ratio", rational_json(res.report.ratio)},
                {"optimum", rational_json(res.report.opt)},
                {"best_fair", rational_json(res.report.best_fair)},
                {"witness", allocation_json(res.report.witness)},
                {"instance", instance_text}}
               .dump(2)
        << '\n';
  } else {
    out << "evaluated: " << res.evaluated << " instances\n";
    out << "max ratio: " << rational_text(res.report.ratio) << '\n';
    out << "OPT: " << rational_text(res.report.opt) << ", best fair: " << rational_text(res.report.best_fair) << '\n';
    out << "witness: " << describe(res.report.witness) << '\n';
    if (args.out_path.empty()) out << instance_text;
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string named, eps = "1/100", out_path, name;
  std::size_t agents = 2, indivisible = 3, divisible = 1;
  bool unscaled = false;
  std::uint64_t seed = 1;
};

int cmd_gen(const GenArgs& args, std::ostream& out) {
  InstanceFile file{Instance(UtilityMatrix(1, 0), UtilityMatrix(1, 0)), std::nullopt, std::nullopt};
  if (args.named == "thm34") {
    Rational eps;
    try {
      eps = Rational::parse(args.eps);
    } catch (const ArgumentError& e) {
      throw UsageError(std::string("--eps: ") + e.what());
    }
    file = {thm34_lower_bound(eps), std::string("three-halves lower bound"), "named eps=" + eps.str()};
  } else if (args.named == "table3") {
    file = {table3_po_example(), std::string("EFM versus Pareto optimality"), std::string("named")};
  } else {
    file.instance = random_instance(args.agents, args.indivisible, args.divisible, !args.unscaled, args.seed);
    file.source = "random seed=" + std::to_string(args.seed) + (args.unscaled ? " unscaled" : " scaled");
  }
  if (!args.name.empty()) file.name = args.name;
  const std::string text = serialize_instance(file);
  if (args.out_path.empty()) {
    out << text;
  } else {
    write_file(args.out_path, text);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fair division of mixed divisible and indivisible goods", "fairdiv"};
  app.require_subcommand(1);
  std::function<int()> action;

  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Check an allocation against fairness notions");
  check_cmd->add_option("instance", check_args.instance, "Instance file")->required();
  check_cmd->add_option("allocation", check_args.allocation, "Allocation file")->required();
  check_cmd->add_option("--notion", check_args.notion, "all, or a comma-separated list of EF, EF1, EFX, EFM, EFXM")
      ->capture_default_str();
  add_format(check_cmd, check_args.common);
  check_cmd->callback([&] { action = [&] { return cmd_check(check_args, out); }; });

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Run an allocation algorithm");
  solve_cmd->add_option("instance", solve_args.instance, "Instance file")->required();
  solve_cmd->add_option("--algo", solve_args.algo, "Algorithm")
      ->required()
      ->check(CLI::IsMember({"cutchoose", "ef1two", "efxmabs", "efmcomplete"}));
  solve_cmd->add_option("--out", solve_args.out_path, "Write the allocation to this file");
  add_format(solve_cmd, solve_args.common);
  solve_cmd->callback([&] { action = [&] { return cmd_solve(solve_args, out); }; });

  PriceArgs price_args;
  auto* price_cmd = app.add_subcommand("price", "Exact price of fairness of one instance by exhaustive search");
  price_cmd->add_option("instance", price_args.instance, "Instance file")->required();
  price_cmd->add_option("--notion", price_args.notion, "EF, EF1, EFX, EFM or EFXM")->capture_default_str();
  price_cmd->add_option("--level", price_args.level, "Pieces per divisible good")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  price_cmd->add_flag("--partial", price_args.partial, "Admit partial allocations");
  price_cmd->add_flag("--complete", price_args.complete, "Only complete allocations");
  price_cmd->add_option("--budget", price_args.budget, "Maximum allocations to enumerate");
  add_format(price_cmd, price_args.common);
  price_cmd->callback([&] { action = [&] { return cmd_price(price_args, out); }; });

  ReproduceArgs repro_args;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run a bound experiment");
  std::vector<std::string> names;
  for (auto b : bound_names()) names.emplace_back(b);
  repro_cmd->add_option("--bound", repro_args.bound, "Experiment")->required()->check(CLI::IsMember(names));
  repro_cmd->add_option("--seed", repro_args.seed, "Base seed")->capture_default_str();
  repro_cmd->add_option("--budget", repro_args.budget, "Maximum allocations to enumerate per oracle call");
  add_format(repro_cmd, repro_args.common);
  repro_cmd->callback([&] { action = [&] { return cmd_reproduce(repro_args, out); }; });

  SearchArgs search_args;
  auto* search_cmd = app.add_subcommand("search", "Randomised search for instances with a high price of fairness");
  search_cmd->add_option("--notion", search_args.notion, "EF, EF1, EFX, EFM or EFXM")->capture_default_str();
  search_cmd->add_option("--agents", search_args.agents, "Agents")->check(CLI::PositiveNumber)->capture_default_str();
  search_cmd->add_option("--max-indivisible", search_args.max_indivisible, "Largest number of indivisible goods")
      ->capture_default_str();
  search_cmd->add_option("--divisible", search_args.divisible, "Divisible goods")->capture_default_str();
  search_cmd->add_option("--level", search_args.level, "Pieces per divisible good")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  search_cmd->add_option("--trials", search_args.trials, "Instances to evaluate")->capture_default_str();
  search_cmd->add_option("--seed", search_args.seed, "Seed")->capture_default_str();
  search_cmd->add_flag("--unscaled", search_args.unscaled, "Do not normalise utilities");
  search_cmd->add_flag("--partial", search_args.partial, "Admit partial allocations");
  search_cmd->add_flag("--complete", search_args.complete, "Only complete allocations");
  search_cmd->add_option("--budget", search_args.budget, "Maximum allocations to enumerate per instance");
  search_cmd->add_option("--out", search_args.out_path, "Write the worst instance to this file");
  add_format(search_cmd, search_args.common);
  search_cmd->callback([&] { action = [&] { return cmd_search(search_args, out); }; });

  GenArgs gen_args;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random or named instance");
  gen_cmd->add_option("--named", gen_args.named, "Named instance")->check(CLI::IsMember({"thm34", "table3"}));
  gen_cmd->add_option("--eps", gen_args.eps, "Parameter of the three-halves instance")->capture_default_str();
  gen_cmd->add_option("--agents", gen_args.agents, "Agents")->check(CLI::PositiveNumber)->capture_default_str();
  gen_cmd->add_option("--indivisible", gen_args.indivisible, "Indivisible goods")->capture_default_str();
  gen_cmd->add_option("--divisible", gen_args.divisible, "Divisible goods")->capture_default_str();
  gen_cmd->add_flag("--unscaled", gen_args.unscaled, "Do not normalise utilities");
  gen_cmd->add_option("--seed", gen_args.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--name", gen_args.name, "Name stored in the file");
  gen_cmd->add_option("--out", gen_args.out_path, "Output file (default: stdout)");
  gen_cmd->callback([&] { action = [&] { return cmd_gen(gen_args, out); }; });

  std::vector<const char*> argv{"fairdiv"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const InfeasibleError& e) {
    err << "fairdiv: " << e.what() << '\n';
    return kViolation;
  } catch (const std::exception& e) {
    err << "fairdiv: error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace fairdiv::cli
