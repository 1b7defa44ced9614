#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/core.hpp"

namespace fairdiv {

enum class Notion { EF, EF1, EFX, EFM, EFXM };

inline constexpr std::array<Notion, 5> kAllNotions = {Notion::EF, Notion::EF1, Notion::EFX,
                                                      Notion::EFM, Notion::EFXM};

std::string_view to_string(Notion n);
// Case-insensitive; throws ArgumentError on an unknown name.
Notion parse_notion(std::string_view name);

// Agent `envious` fails the criterion towards the bundle of `envied`. For the
// up-to-one-good notions `good` is the removal candidate that still fails:
// the most valuable good for EF1, the least valuable one for EFX.
struct Violation {
  AgentId envious = 0;
  AgentId envied = 0;
  std::optional<GoodId> good;
};

struct CheckResult {
  bool satisfied = true;
  std::optional<Violation> witness;
  explicit operator bool() const { return satisfied; }
};

// u_i(A_i) < u_i(A_j).
bool envies(const Instance& inst, AgentId i, AgentId j, const Allocation& a);

// i envies j even after removing any single indivisible good from A_j. When
// M_j is empty this reduces to plain envy.
bool strongly_envies(const Instance& inst, AgentId i, AgentId j, const Allocation& a);

// Exact predicate for the notion. Partial allocations are allowed; the caller
// is responsible for feasibility. Removal only ever ranges over indivisible
// goods, and for EF1/EFX an envied bundle without indivisible goods must be
// envy-free. EFM/EFXM switch to the EF criterion as soon as any divisible
// fraction of the envied bundle is strictly positive.
CheckResult check(const Instance& inst, const Allocation& a, Notion notion);

// Directed graph with edge (i, j) iff agent i strictly envies agent j.
class EnvyGraph {
 public:
  explicit EnvyGraph(std::size_t agents)
      : n_(agents), adj_(agents, std::vector<bool>(agents, false)) {}

  std::size_t size() const { return n_; }
  bool has_edge(AgentId i, AgentId j) const { return adj_[i][j]; }
  void set_edge(AgentId i, AgentId j, bool value = true) { adj_[i][j] = value; }
  std::size_t edge_count() const;
  std::size_t in_degree(AgentId j) const;

  // Agents nobody envies, ascending.
  std::vector<AgentId> sources() const;
  // Some directed cycle (each agent envies the next, last envies first), or
  // nothing when the graph is acyclic. Deterministic.
  std::optional<std::vector<AgentId>> find_cycle() const;

 private:
  std::size_t n_;
  std::vector<std::vector<bool>> adj_;
};

EnvyGraph envy_graph(const Instance& inst, const Allocation& a);

// u_i(A_j) for every ordered pair, row i = evaluator.
std::vector<std::vector<Rational>> valuation_table(const Instance& inst, const Allocation& a);

}  // namespace fairdiv
