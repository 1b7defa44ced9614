#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

// ---------------------------------------------------------------------------
// Partitioning

struct PartitionResult {
  // Indices into the input value list; disjoint, covering every index.
  std::vector<std::vector<std::size_t>> parts;
  Rational min_value;
};

// Exact max-min partition of `values` into k parts (k in {2, 3}). Exhaustive
// search, so intended for a few dozen values at most. Throws ArgumentError on
// other k or a negative value.
PartitionResult balanced_partition(std::span<const Rational> values, std::size_t k);

// Two bundles covering M u D, `higher` weakly preferred by the partitioning
// agent, the value gap as small as possible when divisible goods are split
// fractionally. Goods the agent values at zero always sit in `lower`.
struct BundlePair {
  Bundle higher;
  Bundle lower;
  Rational gap;
};

inline constexpr std::size_t kMaxPartitionGoods = 24;

// Throws ArityError unless n == 2, ArgumentError when more than
// kMaxPartitionGoods positively valued indivisible goods would be enumerated.
BundlePair most_equal_partition(const Instance& inst, AgentId agent);

// ---------------------------------------------------------------------------
// Two agents

// Cut-and-choose on mixed goods. The agent whose most-equal partition has the
// smaller gap cuts (agent 1 on ties); the other agent picks, taking the
// bundle the cutter values less when indifferent. Throws ArityError unless n == 2.
Allocation cut_and_choose(const Instance& inst);

using ReassignmentObserver = std::function<void(const Allocation&)>;

// Moves goods of T_1 = {g : u_1(g) >= u_2(g)} from agent 2 to agent 1, or
// swaps bundles, until agent 1 no longer strongly envies agent 2. The
// observer sees the allocation after each iteration.
// Throws ContractError if n != 2, divisible goods exist, agent 2 strongly
// envies agent 1 in `a`, or agent 1 ends up strongly envying a bundle with no
// T_1 good left to move. Inputs of the form (T_A, T_B u T_2) with T_A u T_B =
// T_1, where agent 2 strongly envies agent 1 in (T_1, T_2), never hit the last
// case.
Allocation one_by_one_reassignment(const Instance& inst, const Allocation& a,
                                   const ReassignmentObserver& observer = {});

struct Ef1TwoAgentResult {
  Allocation allocation;
  Rational y;           // SP(T_1)
  int case_id = 0;      // 1: y >= 1/2, 2: y <= 1/3, 3: otherwise
  int subcase = 0;      // 1..3 within case 3, 0 elsewhere
  bool optimal_was_ef1 = false;
  bool agents_swapped = false;  // agent 1 was the strongly envious one
};

// EF1 allocation of a scaled two-agent indivisible instance with
// 8 * SW >= 7 * OPT. Throws ContractError on unscaled input or divisible goods,
// ArityError unless n == 2.
Ef1TwoAgentResult ef1_two_agent_scaled_detailed(const Instance& inst);
Allocation ef1_two_agent_scaled(const Instance& inst);

// ---------------------------------------------------------------------------
// Discretization

struct PieceSource {
  bool divisible = false;
  std::size_t good = 0;   // original indivisible index, or divisible index
  std::size_t piece = 0;  // 0..level-1 for pieces
};

struct PieceMap {
  std::size_t level = 1;
  std::size_t indivisible = 0;
  std::size_t divisible = 0;
  // One entry per good of the discretized instance: first the original
  // indivisible goods, then level pieces of d_1, then of d_2, ...
  std::vector<PieceSource> sources;
};

struct Discretized {
  Instance instance;
  PieceMap map;
};

// Splits every divisible good into `level` equal indivisible pieces.
// Throws ArgumentError when level == 0.
Discretized discretize(const Instance& inst, std::size_t level);

// An allocation of the discretized instance viewed as one of the original
// instance: fraction of d_k = pieces held / level.
Allocation lift(const Allocation& discrete, const PieceMap& map);

// ---------------------------------------------------------------------------
// Welfare-guaranteed pipeline for n agents

// weights is rows x cols with rows <= cols; returns the column matched to
// each row in a maximum-weight matching saturating all rows. Lowest-index
// tie-breaking is not guaranteed, only optimality.
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<Rational>>& weights);

struct MatchingResult {
  Allocation allocation;  // dummy goods stripped: an agent may hold nothing
  // Matched good per agent in the padded good set; >= m means a dummy.
  std::vector<GoodId> matched;
  Rational weight;
};

// Each agent receives one (possibly dummy, zero-valued) indivisible good,
// the matching having maximum total weight.
MatchingResult max_weight_matching_init(const Instance& inst);

struct CharityResult {
  Allocation allocation;
  std::vector<GoodId> pool;  // unallocated indivisible goods, ascending
};

// Extends a partial EFX allocation of the indivisible goods. On return the
// allocation is partial EFX, no agent is worse off than in `partial`, and
// u_i(A_i) >= u_i(pool) for every agent. Divisible fractions must be zero.
// Throws ContractError if `partial` is infeasible or not EFX.
CharityResult efx_extend_with_charity(const Instance& inst, const Allocation& partial);

// Allocates all divisible goods on top of an allocation whose divisible
// fractions are all zero. Preserves EFX (resp. EF1) towards bundles without
// divisible goods and leaves nobody envying a bundle that holds some. No
// agent's utility decreases.
Allocation allocate_divisibles_efxm(const Instance& inst, const Allocation& partial);

struct PipelineTrace {
  Allocation matching;
  Allocation extended;
  Allocation final_allocation;
  std::vector<GoodId> pool;
};

// Partial EFXM allocation with (2n + 1) * SW >= sum_i u_i(M u D).
PipelineTrace efxm_abs(const Instance& inst);

// Complete EFM allocation with 2n * SW >= sum_i u_i(M u D).
Allocation efm_complete(const Instance& inst);

// Rotates bundles along an envy cycle: the agent at cycle[t] receives the
// bundle of cycle[t + 1].
void rotate_bundles(Allocation& a, const std::vector<AgentId>& cycle);

}  // namespace fairdiv
