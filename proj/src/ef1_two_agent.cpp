#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

namespace {

void require_two_agent_indivisible(const Instance& inst, const char* what) {
  if (inst.agents() != 2) throw ArityError(std::string(what) + " needs exactly two agents");
  if (inst.divisible_count() != 0) {
    throw ContractError(std::string(what) + " is defined for indivisible goods only");
  }
}

Instance swap_agents(const Instance& inst) {
  UtilityMatrix indiv(2, inst.indivisible_count());
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    indiv(0, g) = inst.indiv(1, g);
    indiv(1, g) = inst.indiv(0, g);
  }
  return Instance(std::move(indiv), UtilityMatrix(2, 0));
}

Allocation two_bundles(const Instance& inst, std::vector<GoodId> first, std::vector<GoodId> second) {
  Allocation a = Allocation::empty(inst);
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  a[0].goods = std::move(first);
  a[1].goods = std::move(second);
  return a;
}

std::vector<GoodId> complement(const Instance& inst, const std::vector<GoodId>& set) {
  std::vector<GoodId> out;
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    if (!std::binary_search(set.begin(), set.end(), g)) out.push_back(g);
  }
  return out;
}

std::vector<GoodId> gather(const std::vector<GoodId>& pool, const std::vector<std::size_t>& idx) {
  std::vector<GoodId> out;
  out.reserve(idx.size());
  for (std::size_t t : idx) out.push_back(pool[t]);
  return out;
}

// Runs the three-case construction on an instance where agent 1 does not
// strongly envy agent 2 in the item-wise optimum.
Ef1TwoAgentResult solve_oriented(const Instance& inst) {
  Ef1TwoAgentResult r;
  const std::vector<GoodId> t1 = agent1_favoured_goods(inst);
  const std::vector<GoodId> t2 = complement(inst, t1);
  r.y = surplus(inst, t1);
  const Allocation optimum = two_bundles(inst, t1, t2);

  const Rational half(1, 2);
  const Rational third(1, 3);
  r.case_id = r.y >= half ? 1 : (r.y <= third ? 2 : 3);
  if (r.case_id == 1 || check(inst, optimum, Notion::EF1)) {
    r.allocation = optimum;
    r.optimal_was_ef1 = true;
    return r;
  }

  std::vector<Rational> u2;
  for (GoodId g : t1) u2.push_back(inst.indiv(1, g));

  Allocation start;
  if (r.case_id == 2) {
    PartitionResult halves = balanced_partition(u2, 2);
    std::vector<GoodId> ta = gather(t1, halves.parts[0]);
    std::vector<GoodId> tb = gather(t1, halves.parts[1]);
    if (surplus(inst, ta) < surplus(inst, tb)) std::swap(ta, tb);
    tb.insert(tb.end(), t2.begin(), t2.end());
    start = two_bundles(inst, ta, tb);
  } else {
    PartitionResult thirds = balanced_partition(u2, 3);
    std::vector<std::vector<GoodId>> parts;
    for (const auto& p : thirds.parts) parts.push_back(gather(t1, p));
    std::stable_sort(parts.begin(), parts.end(), [&](const auto& a, const auto& b) {
      return utility_of_goods(inst, 1, a) > utility_of_goods(inst, 1, b);
    });
    const Rational top = utility_of_goods(inst, 1, parts[0]);
    const Rational bottom = utility_of_goods(inst, 1, parts[2]);
    if (bottom >= Rational(1, 6)) {
      r.subcase = 1;
    } else if (top <= third) {
      r.subcase = 2;
    } else {
      // The optimum is EF1 here; reaching this branch means it was not.
      r.subcase = 3;
      throw std::logic_error("EF1 construction reached its last subcase with a non-EF1 optimum");
    }
    std::size_t smallest = 0;
    for (std::size_t p = 1; p < 3; ++p) {
      if (surplus(inst, parts[p]) < surplus(inst, parts[smallest])) smallest = p;
    }
    std::vector<GoodId> to_first;
    std::vector<GoodId> to_second = t2;
    for (std::size_t p = 0; p < 3; ++p) {
      auto& dest = p == smallest ? to_second : to_first;
      dest.insert(dest.end(), parts[p].begin(), parts[p].end());
    }
    start = two_bundles(inst, to_first, to_second);
  }
  r.allocation = one_by_one_reassignment(inst, start);
  return r;
}

}  // namespace

Allocation one_by_one_reassignment(const Instance& inst, const Allocation& a,
                                   const ReassignmentObserver& observer) {
  require_two_agent_indivisible(inst, "one-by-one reassignment");
  if (!is_feasible(inst, a)) throw ContractError("one-by-one reassignment needs a feasible allocation");
  if (strongly_envies(inst, 1, 0, a)) {
    throw ContractError("one-by-one reassignment needs agent 2 not to strongly envy agent 1");
  }
  std::vector<bool> in_t1(inst.indivisible_count(), false);
  for (GoodId g : agent1_favoured_goods(inst)) in_t1[g] = true;

  Allocation cur = a;
  // Each move hands one T_1 good to agent 1, and a swap ends the process.
  const std::size_t max_iterations =
      static_cast<std::size_t>(std::count_if(cur[1].goods.begin(), cur[1].goods.end(),
                                             [&](GoodId g) { return in_t1[g]; })) + 1;
  std::size_t iterations = 0;
  while (strongly_envies(inst, 0, 1, cur)) {
    if (++iterations > max_iterations) {
      throw std::logic_error("one-by-one reassignment exceeded its iteration bound");
    }
    std::optional<GoodId> pick;
    for (GoodId g : cur[1].goods) {
      if (!in_t1[g]) continue;
      if (!pick || inst.indiv(0, g) - inst.indiv(1, g) > inst.indiv(0, *pick) - inst.indiv(1, *pick)) {
        pick = g;
      }
    }
    if (!pick) throw ContractError("agent 1 strongly envies a bundle without T_1 goods");
    const GoodId g = *pick;
    if (utility(inst, 1, cur[1]) - inst.indiv(1, g) >= utility(inst, 1, cur[0])) {
      cur[1].remove(g);
      cur[0].add(g);
    } else {
      std::swap(cur[0], cur[1]);
    }
    if (observer) observer(cur);
  }
  return cur;
}

Ef1TwoAgentResult ef1_two_agent_scaled_detailed(const Instance& inst) {
  require_two_agent_indivisible(inst, "the two-agent EF1 construction");
  if (!inst.is_scaled()) throw ContractError("the two-agent EF1 construction needs scaled utilities");

  const std::vector<GoodId> t1 = agent1_favoured_goods(inst);
  const Allocation optimum = two_bundles(inst, t1, complement(inst, t1));
  if (strongly_envies(inst, 0, 1, optimum)) {
    Ef1TwoAgentResult r = solve_oriented(swap_agents(inst));
    std::swap(r.allocation[0], r.allocation[1]);
    r.agents_swapped = true;
    return r;
  }
  return solve_oriented(inst);
}

Allocation ef1_two_agent_scaled(const Instance& inst) {
  return ef1_two_agent_scaled_detailed(inst).allocation;
}

}  // namespace fairdiv
