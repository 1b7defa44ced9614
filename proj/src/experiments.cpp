#include "fairdiv/experiments.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"
#include "fairdiv/instances.hpp"

namespace fairdiv {

namespace {

constexpr std::size_t kMaxEvidence = 5;

// Collects failures; only the first few are kept as evidence.
class Tally {
 public:
  explicit Tally(ExperimentReport& r) : r_(r) {}
  void fail(const std::string& what) {
    if (++failures_ <= kMaxEvidence) r_.evidence.push_back(what);
  }
  void note(const std::string& what) { r_.evidence.push_back(what); }
  std::size_t failures() const { return failures_; }

 private:
  ExperimentReport& r_;
  std::size_t failures_ = 0;
};

std::string ratio_text(const Rational& r) { return r.str() + " (" + r.decimal(6) + ")"; }

Rational sum_totals(const Instance& inst) { return total_utility_sum(inst); }

bool divisibles_fully_allocated(const Instance& inst, const Allocation& a) {
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
    Rational s;
    for (const auto& b : a.bundles) s += b.fractions[k];
    if (s != Rational(1)) return false;
  }
  return true;
}

std::string label(std::size_t t, const Instance& inst) {
  return "#" + std::to_string(t) + " n=" + std::to_string(inst.agents()) + " m=" +
         std::to_string(inst.indivisible_count()) + " mdiv=" + std::to_string(inst.divisible_count());
}

// 1. Cut-and-choose: EFXM and half of the total utility.
void cut_and_choose_guarantee(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "cut-and-choose is EFXM with 2 SW >= u1(M u D) + u2(M u D)";
  r.bound = "1000 random two-agent mixed instances, m <= 6, mdiv <= 3";
  std::mt19937_64 rng(o.seed + 1);
  Tally tally(r);
  for (std::size_t t = 0; t < 1000; ++t) {
    const std::size_t m = rng() % 7, md = (m == 0 ? 1 : 0) + rng() % (m == 0 ? 3 : 4);
    const Instance inst = random_instance(2, m, md, rng() % 2 == 0, rng());
    const Allocation a = cut_and_choose(inst);
    if (!is_complete(inst, a)) tally.fail(label(t, inst) + ": incomplete " + describe(a));
    if (!check(inst, a, Notion::EFXM)) tally.fail(label(t, inst) + ": not EFXM " + describe(a));
    if (Rational(2) * social_welfare(inst, a) < sum_totals(inst)) {
      tally.fail(label(t, inst) + ": welfare " + social_welfare(inst, a).str() + " below half of the totals");
    }
  }
  r.observed = std::to_string(tally.failures()) + " violations";
  r.passed = tally.failures() == 0;
}

// 2. The two-agent EF1 construction and the oracle price of EF1.
void ef1_upper_bound(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "two-agent EF1 construction reaches 7/8 of OPT; the oracle price of EF1 stays <= 8/7";
  r.bound = "1000 scaled instances m <= 7 (construction), 200 instances m <= 6 (oracle)";
  std::mt19937_64 rng(o.seed + 2);
  Tally tally(r);
  for (std::size_t t = 0; t < 1000; ++t) {
    const Instance inst = random_instance(2, 1 + rng() % 7, 0, true, rng());
    const Ef1TwoAgentResult res = ef1_two_agent_scaled_detailed(inst);
    const Rational sw = social_welfare(inst, res.allocation);
    const Rational opt = optimal_welfare(inst);
    if (!check(inst, res.allocation, Notion::EF1)) tally.fail(label(t, inst) + ": not EF1");
    if (Rational(8) * sw < Rational(7) * opt) tally.fail(label(t, inst) + ": 8 SW < 7 OPT");
    const Rational one(1);
    bool floor_ok = true;
    if (res.case_id == 1) floor_ok = sw == one + res.y && check(inst, res.allocation, Notion::EF);
    if (res.case_id == 2) floor_ok = sw >= one + res.y / Rational(2);
    if (res.case_id == 3) floor_ok = sw >= one + Rational(2) * res.y / Rational(3);
    if (!floor_ok) tally.fail(label(t, inst) + ": case " + std::to_string(res.case_id) + " welfare floor missed");
  }
  Rational worst(1);
  OracleConfig cfg = default_config(Notion::EF1);
  cfg.budget = o.budget;
  for (std::size_t t = 0; t < 200; ++t) {
    const Instance inst = random_instance(2, 1 + rng() % 6, 0, true, rng());
    const PriceReport rep = price_of_fairness(inst, cfg);
    worst = max(worst, rep.ratio);
    if (rep.ratio > Rational(8, 7)) tally.fail(label(t, inst) + ": oracle ratio " + rep.ratio.str());
    if (social_welfare(inst, ef1_two_agent_scaled(inst)) > rep.best_fair) {
      tally.fail(label(t, inst) + ": construction beats the oracle");
    }
  }
  r.observed = "max oracle ratio " + ratio_text(worst) + ", " + std::to_string(tally.failures()) + " violations";
  r.passed = tally.failures() == 0;
}

// 3. Randomised search for a bad EF1 instance.
void ef1_lower_bound_search(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "randomised search finds an EF1 price in [1.10, 8/7]";
  r.bound = "10^4 trials, two scaled agents, m <= 6";
  SearchConfig cfg;
  cfg.oracle = default_config(Notion::EF1);
  cfg.oracle.budget = o.budget;
  cfg.space = {2, 6, 0, true};
  cfg.trials = 10000;
  cfg.seed = o.seed + 3;
  const SearchResult res = search_worst_case(cfg);
  const Rational ratio = res.report.ratio;
  r.observed = "max ratio " + ratio_text(ratio) + " over " + std::to_string(res.evaluated) + " instances";
  r.evidence.push_back("worst instance:\n" + serialize_instance(res.instance));
  r.evidence.push_back("best EF1 allocation " + describe(res.report.witness));
  r.passed = ratio >= Rational(11, 10) && ratio <= Rational(8, 7);
}

// 4. The 3/2 price of EFM for two scaled agents.
void efm_three_halves(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "price of EFM on the lower-bound instance is 74/50; OPT <= 3/2 best EFM";
  r.bound = "eps = 1/100 at levels 2, 10, 50, 100; 200 random scaled mixed instances, level <= 10";
  Tally tally(r);
  const Instance inst = thm34_lower_bound(Rational(1, 100));
  const Rational three_halves(3, 2);
  Rational headline;
  for (std::size_t level : {2, 10, 50, 100}) {
    OracleConfig cfg = default_config(Notion::EFM, level);
    cfg.budget = level == 100 ? o.large_budget : o.budget;
    const PriceReport rep = price_of_fairness(inst, cfg);
    tally.note("level " + std::to_string(level) + ": OPT " + rep.opt.str() + ", best EFM " + rep.best_fair.str() +
               ", ratio " + ratio_text(rep.ratio) + ", witness " + describe(rep.witness));
    if (rep.opt > three_halves * rep.best_fair) tally.fail("level " + std::to_string(level) + " exceeds 3/2");
    if (level == 100) {
      headline = rep.ratio;
      if (rep.best_fair != Rational(1)) tally.fail("best EFM welfare at level 100 is " + rep.best_fair.str());
      if (rep.opt != Rational(74, 50)) tally.fail("OPT is " + rep.opt.str());
      if (rep.ratio != Rational(74, 50) || rep.ratio < Rational(145, 100)) tally.fail("ratio is " + rep.ratio.str());
    }
  }
  std::mt19937_64 rng(o.seed + 4);
  Rational worst(1);
  for (std::size_t t = 0; t < 200; ++t) {
    const std::size_t m = rng() % 4, md = 1 + rng() % 2, level = 1 + rng() % 10;
    const Instance rnd = random_instance(2, m, md, true, rng());
    OracleConfig cfg = default_config(Notion::EFM, level);
    cfg.budget = o.budget;
    const FairOptimum best = best_fair_welfare(rnd, cfg);
    const Rational opt = optimal_welfare(rnd);
    worst = max(worst, opt / best.welfare);
    if (opt > three_halves * best.welfare) {
      tally.fail(label(t, rnd) + " level " + std::to_string(level) + ": OPT " + opt.str() + " > 3/2 * " +
                 best.welfare.str());
    }
  }
  tally.note("max ratio over random instances " + ratio_text(worst));
  r.observed = "ratio at level 100 " + ratio_text(headline);
  r.passed = tally.failures() == 0;
}

// 5. Cut-and-choose certifies the price 2 for unscaled agents.
void unscaled_price_two(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "OPT <= 2 SW(cut-and-choose) for unscaled agents";
  r.bound = "500 random unscaled two-agent mixed instances";
  std::mt19937_64 rng(o.seed + 5);
  Tally tally(r);
  Rational worst(0);
  for (std::size_t t = 0; t < 500; ++t) {
    const Instance inst = random_instance(2, rng() % 7, rng() % 4, false, rng());
    const Rational sw = social_welfare(inst, cut_and_choose(inst));
    const Rational opt = optimal_welfare(inst);
    if (sw.sign() > 0) worst = max(worst, opt / sw);
    if (opt > Rational(2) * sw) tally.fail(label(t, inst) + ": OPT " + opt.str() + " > 2 * " + sw.str());
  }
  r.observed = "max OPT / SW " + ratio_text(worst);
  r.passed = tally.failures() == 0;
}

std::vector<Instance> pipeline_instances(const ExperimentOptions& o) {
  std::mt19937_64 rng(o.seed + 6);
  std::vector<Instance> out;
  for (std::size_t t = 0; t < 300; ++t) {
    const std::size_t n = 2 + rng() % 3, m = rng() % 7, md = (m == 0 ? 1 : 0) + rng() % (m == 0 ? 2 : 3);
    out.push_back(random_instance(n, m, md, t % 2 == 0, rng()));
  }
  return out;
}

// 6. The partial EFXM pipeline.
void efxm_absolute(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "partial EFXM allocation with (2n + 1) SW >= sum of totals";
  r.bound = "300 random instances, n in {2, 3, 4}, m <= 6, mdiv <= 2";
  Tally tally(r);
  std::size_t t = 0;
  Rational tightest;
  bool any = false;
  for (const Instance& inst : pipeline_instances(o)) {
    const PipelineTrace trace = efxm_abs(inst);
    const Allocation& a = trace.final_allocation;
    const std::string id = label(t++, inst);
    if (!is_feasible(inst, a)) {
      tally.fail(id + ": infeasible");
      continue;
    }
    if (!check(inst, a, Notion::EFXM)) tally.fail(id + ": not EFXM " + describe(a));
    if (!divisibles_fully_allocated(inst, a)) tally.fail(id + ": divisible goods left over");
    for (AgentId i = 0; i < inst.agents(); ++i) {
      if (utility_of_goods(inst, i, trace.pool) > utility(inst, i, a[i])) {
        tally.fail(id + ": agent " + std::to_string(i + 1) + " envies the pool");
      }
    }
    const Rational sw = social_welfare(inst, a);
    const Rational lhs = Rational(static_cast<long>(2 * inst.agents() + 1)) * sw;
    if (lhs < sum_totals(inst)) tally.fail(id + ": welfare guarantee missed");
    if (sum_totals(inst).sign() > 0) {
      const Rational slack = lhs / sum_totals(inst);
      if (!any || slack < tightest) tightest = slack;
      any = true;
    }
  }
  r.observed = "min (2n + 1) SW / total " + (any ? ratio_text(tightest) : std::string("n/a")) + ", " +
               std::to_string(tally.failures()) + " violations";
  r.passed = tally.failures() == 0;
}

// 7. The complete EFM extension.
void efm_complete_guarantee(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "complete EFM allocation with 2n SW >= sum of totals";
  r.bound = "the 300 instances of experiment 6";
  Tally tally(r);
  std::size_t t = 0;
  for (const Instance& inst : pipeline_instances(o)) {
    const Allocation a = efm_complete(inst);
    const std::string id = label(t++, inst);
    if (!is_complete(inst, a)) {
      tally.fail(id + ": incomplete " + describe(a));
      continue;
    }
    if (!check(inst, a, Notion::EFM)) tally.fail(id + ": not EFM " + describe(a));
    if (Rational(static_cast<long>(2 * inst.agents())) * social_welfare(inst, a) < sum_totals(inst)) {
      tally.fail(id + ": welfare guarantee missed");
    }
  }
  r.observed = std::to_string(tally.failures()) + " violations";
  r.passed = tally.failures() == 0;
}

// 8. Oracle values respect the implications between notions.
void lattice_consistency(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "best fair welfare is monotone along EF, EFXM, EFM, EF1";
  r.bound = "200 small instances, partial allocations, levels 1..3";
  std::mt19937_64 rng(o.seed + 8);
  Tally tally(r);
  for (std::size_t t = 0; t < 200; ++t) {
    const std::size_t n = 2 + rng() % 2, m = rng() % 5, md = t % 2 == 0 ? 0 : 1 + rng() % 2;
    const std::size_t level = 1 + rng() % 3;
    const Instance inst = random_instance(n, m == 0 && md == 0 ? 1 : m, md, rng() % 2 == 0, rng());
    std::vector<Rational> best;
    for (Notion notion : kAllNotions) {
      OracleConfig cfg = default_config(notion, level);
      cfg.allow_partial = true;
      cfg.budget = o.budget;
      best.push_back(best_fair_welfare(inst, cfg).welfare);
    }
    const Rational &ef = best[0], &ef1 = best[1], &efx = best[2], &efm = best[3], &efxm = best[4];
    const std::string id = label(t, inst) + " level " + std::to_string(level);
    if (!(ef <= efxm && efxm <= efm && efm <= ef1)) {
      tally.fail(id + ": EF " + ef.str() + ", EFXM " + efxm.str() + ", EFM " + efm.str() + ", EF1 " + ef1.str());
    }
    if (!(efx <= efxm)) tally.fail(id + ": EFX above EFXM");
    if (inst.divisible_count() == 0 && (efm != ef1 || efxm != efx)) {
      tally.fail(id + ": notions fail to coincide without divisible goods");
    }
  }
  r.observed = std::to_string(tally.failures()) + " violations";
  r.passed = tally.failures() == 0;
}

bool pareto_dominates(const Instance& inst, const Allocation& b, const Allocation& a) {
  bool strict = false;
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const Rational ub = utility(inst, i, b[i]), ua = utility(inst, i, a[i]);
    if (ub < ua) return false;
    strict = strict || ub > ua;
  }
  return strict;
}

// 9. EFM forces both divisible goods to a single agent in the Pareto example.
void pareto_evidence(ExperimentReport& r, const ExperimentOptions& o) {
  r.title = "EFM forces both divisibles to one agent, and every EFM allocation is Pareto dominated";
  r.bound = "complete allocations at levels 1, 2, 4";
  const Instance inst = table3_po_example();
  Tally tally(r);
  std::size_t total = 0;
  for (std::size_t level : {1, 2, 4}) {
    OracleConfig cfg = default_config(Notion::EFM, level);
    cfg.allow_partial = false;
    cfg.budget = o.budget;
    // Every feasible allocation at this level, as candidate dominators.
    std::vector<Allocation> every;
    const Discretized disc = discretize(inst, level);
    enumerate_allocations(disc.instance, false, [&](const Allocation& d) { every.push_back(lift(d, disc.map)); },
                          o.budget);
    std::size_t found = 0;
    for_each_fair_allocation(inst, cfg, [&](const Allocation& a, const Rational& sw) {
      ++found;
      bool single = false;
      for (AgentId i = 0; i < inst.agents(); ++i) {
        single = single || (a[i].fractions[0] == Rational(1) && a[i].fractions[1] == Rational(1));
      }
      if (!single) tally.fail("level " + std::to_string(level) + ": EFM allocation splits the divisibles " + describe(a));
      const Allocation* dominator = nullptr;
      for (const Allocation& b : every) {
        if (pareto_dominates(inst, b, a)) {
          dominator = &b;
          break;
        }
      }
      if (!dominator) {
        tally.fail("level " + std::to_string(level) + ": undominated EFM allocation " + describe(a));
        return;
      }
      if (check_at_level(inst, *dominator, Notion::EFM, level)) {
        tally.fail("level " + std::to_string(level) + ": dominator is itself EFM");
      }
      tally.note("level " + std::to_string(level) + ": EFM " + describe(a) + " SW " + sw.str() + " dominated by " +
                 describe(*dominator) + " SW " + social_welfare(inst, *dominator).str());
    });
    if (found == 0) tally.fail("level " + std::to_string(level) + ": no EFM allocation found");
    total += found;
  }
  r.observed = std::to_string(total) + " EFM allocations inspected, " + std::to_string(tally.failures()) +
               " violations";
  r.passed = tally.failures() == 0;
}

}  // namespace

ExperimentReport run_criterion(int id, const ExperimentOptions& opts) {
  static const std::function<void(ExperimentReport&, const ExperimentOptions&)> runners[kCriterionCount] = {
      cut_and_choose_guarantee, ef1_upper_bound,        ef1_lower_bound_search,
      efm_three_halves,         unscaled_price_two,     efxm_absolute,
      efm_complete_guarantee,   lattice_consistency,    pareto_evidence};
  if (id < 1 || id > kCriterionCount) throw ArgumentError("experiment id must be 1.." + std::to_string(kCriterionCount));
  ExperimentReport r;
  r.criterion = id;
  const auto start = std::chrono::steady_clock::now();
  try {
    runners[id - 1](r, opts);
  } catch (const std::exception& e) {
    r.passed = false;
    r.evidence.push_back(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::string_view> bound_names() { return {"ef1-87", "efm-32", "unscaled-2", "efxm-abs", "po-table3"}; }

std::vector<int> criteria_for_bound(std::string_view bound) {
  if (bound == "ef1-87") return {2, 3};
  if (bound == "efm-32") return {4};
  if (bound == "unscaled-2") return {5};
  if (bound == "efxm-abs") return {6, 7};
  if (bound == "po-table3") return {9};
  throw ArgumentError("unknown bound '" + std::string(bound) + "'");
}

}  // namespace fairdiv
