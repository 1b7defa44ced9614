#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "fairdiv/core.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

inline constexpr double kDefaultBudget = 2e7;

struct OracleConfig {
  Notion notion = Notion::EF1;
  bool allow_partial = false;
  // Pieces per divisible good.
  std::size_t level = 1;
  // Maximum number of allocation classes the search may visit. Pieces of one
  // divisible good are interchangeable, so a class is fixed by the owner of
  // every indivisible good and the piece counts per agent.
  double budget = kDefaultBudget;
  std::size_t max_agents = 8;
  std::size_t max_indivisible = 24;
  std::size_t max_pieces = 1024;  // divisible_count * level
};

// Partial allocations are the default for EFX, EFM and EFXM.
bool default_allow_partial(Notion notion);
OracleConfig default_config(Notion notion, std::size_t level = 1);

// Number of allocation classes the oracle visits for this configuration.
double allocation_classes(const Instance& inst, const OracleConfig& cfg);

// n^m complete or (n+1)^m partial assignments of an instance without
// divisible goods.
double allocation_count(const Instance& inst, bool allow_partial);

// Visits every assignment of each indivisible good to an agent (or, when
// partial, to nobody) exactly once: lexicographic with good 1 most
// significant, agents ascending, "unallocated" last. Throws ContractError if
// the instance has divisible goods, BudgetError if the count exceeds budget.
void enumerate_allocations(const Instance& inst, bool allow_partial,
                           const std::function<void(const Allocation&)>& visit,
                           double budget = kDefaultBudget);

// The notion evaluated on the instance with every divisible good cut into
// `level` equal pieces; every fraction in `a` must be a multiple of 1/level
// (ArgumentError otherwise). A piece is removable like an indivisible good,
// except that EFM/EFXM towards a bundle holding pieces may only drop one
// piece, never a whole indivisible good. Coincides with check() without
// divisible goods.
bool check_at_level(const Instance& inst, const Allocation& a, Notion notion, std::size_t level);

struct FairOptimum {
  Rational welfare;
  // First maximiser in enumeration order, divisible goods as fractions.
  Allocation witness;
  std::size_t level = 1;
  bool discretized = false;  // the instance had divisible goods
  double classes = 0;
};

// Maximum social welfare over allocations passing check_at_level. Throws
// BudgetError when the search space exceeds the configured limits and
// InfeasibleError when no allocation passes.
FairOptimum best_fair_welfare(const Instance& inst, const OracleConfig& cfg);

// Visits every allocation passing check_at_level together with its welfare,
// in enumeration order. Throws BudgetError like best_fair_welfare.
void for_each_fair_allocation(const Instance& inst, const OracleConfig& cfg,
                              const std::function<void(const Allocation&, const Rational&)>& visit);

struct PriceReport {
  Rational opt;
  Rational best_fair;
  Rational ratio;  // opt / best_fair
  Allocation witness;
  std::size_t level = 1;
  bool discretized = false;
};

// Throws ContractError when the best fair welfare is zero.
PriceReport price_of_fairness(const Instance& inst, const OracleConfig& cfg);

struct SearchSpace {
  std::size_t agents = 2;
  std::size_t max_indivisible = 4;  // indivisible count drawn from 1..max
  std::size_t divisible = 0;
  bool scaled = true;
};

struct SearchConfig {
  OracleConfig oracle;
  SearchSpace space;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  // Optional starting point for local search; must fit the space.
  std::optional<Instance> start;
};

struct SearchResult {
  Instance instance;
  PriceReport report;
  std::size_t evaluated = 0;
};

// Random restarts mixed with local perturbation of the best instance so far.
// Deterministic for a fixed configuration.
SearchResult search_worst_case(const SearchConfig& cfg);

}  // namespace fairdiv
