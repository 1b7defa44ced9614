#include <algorithm>
#include <optional>
#include <stdexcept>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/fairness.hpp"

namespace fairdiv {

namespace {

void require_no_divisible_held(const Allocation& a, const char* what) {
  for (const auto& b : a.bundles) {
    if (b.holds_divisible()) throw ContractError(std::string(what) + " expects divisible fractions to be zero");
  }
}

std::vector<Rational> own_utilities(const Instance& inst, const Allocation& a) {
  std::vector<Rational> out;
  out.reserve(inst.agents());
  for (AgentId i = 0; i < inst.agents(); ++i) out.push_back(utility(inst, i, a[i]));
  return out;
}

// Nobody other than `holder` EFX-envies the indivisible bundle `goods`.
bool nobody_efx_envies(const Instance& inst, const std::vector<Rational>& own,
                       AgentId holder, const std::vector<GoodId>& goods) {
  for (AgentId i = 0; i < inst.agents(); ++i) {
    if (i == holder) continue;
    const Rational value = utility_of_goods(inst, i, goods);
    if (value <= own[i]) continue;
    if (goods.empty()) return false;
    Rational least = inst.indiv(i, goods.front());
    for (GoodId g : goods) least = min(least, inst.indiv(i, g));
    if (value - least > own[i]) return false;
  }
  return true;
}

void eliminate_envy_cycles(const Instance& inst, Allocation& a) {
  while (auto cycle = envy_graph(inst, a).find_cycle()) rotate_bundles(a, *cycle);
}

std::vector<GoodId> without(std::vector<GoodId> goods, GoodId g) {
  goods.erase(std::find(goods.begin(), goods.end(), g));
  return goods;
}

std::vector<GoodId> with(std::vector<GoodId> goods, GoodId g) {
  goods.insert(std::lower_bound(goods.begin(), goods.end(), g), g);
  return goods;
}

// Adds one pool good to an agent without breaking EFX, sources first.
bool try_add_from_pool(const Instance& inst, Allocation& a, std::vector<GoodId>& pool) {
  const std::vector<Rational> own = own_utilities(inst, a);
  const EnvyGraph graph = envy_graph(inst, a);
  std::vector<AgentId> order = graph.sources();
  for (AgentId i = 0; i < inst.agents(); ++i) {
    if (graph.in_degree(i) != 0) order.push_back(i);
  }
  for (GoodId g : pool) {
    for (AgentId s : order) {
      const std::vector<GoodId> grown = with(a[s].goods, g);
      if (nobody_efx_envies(inst, own, s, grown)) {
        a[s].goods = grown;
        pool = without(std::move(pool), g);
        return true;
      }
    }
  }
  return false;
}

// If someone envies the pool, hands a minimal envied subset of it to an
// envious agent and returns that agent's old bundle to the pool.
bool try_pool_exchange(const Instance& inst, Allocation& a, std::vector<GoodId>& pool) {
  const std::vector<Rational> own = own_utilities(inst, a);
  std::optional<AgentId> taker;
  for (AgentId i = 0; i < inst.agents() && !taker; ++i) {
    if (utility_of_goods(inst, i, pool) > own[i]) taker = i;
  }
  if (!taker) return false;

  std::vector<GoodId> z = pool;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (AgentId j = 0; j < inst.agents() && !shrunk; ++j) {
      const Rational value = utility_of_goods(inst, j, z);
      for (GoodId h : z) {
        if (value - inst.indiv(j, h) > own[j]) {
          z = without(std::move(z), h);
          taker = j;
          shrunk = true;
          break;
        }
      }
    }
  }

  std::vector<GoodId> next_pool;
  std::set_difference(pool.begin(), pool.end(), z.begin(), z.end(), std::back_inserter(next_pool));
  next_pool.insert(next_pool.end(), a[*taker].goods.begin(), a[*taker].goods.end());
  std::sort(next_pool.begin(), next_pool.end());
  a[*taker].goods = std::move(z);
  pool = std::move(next_pool);
  return true;
}

}  // namespace

void rotate_bundles(Allocation& a, const std::vector<AgentId>& cycle) {
  if (cycle.size() < 2) return;
  Bundle first = std::move(a[cycle.front()]);
  for (std::size_t t = 0; t + 1 < cycle.size(); ++t) a[cycle[t]] = std::move(a[cycle[t + 1]]);
  a[cycle.back()] = std::move(first);
}

CharityResult efx_extend_with_charity(const Instance& inst, const Allocation& partial) {
  if (!is_feasible(inst, partial)) throw ContractError("charity extension needs a feasible allocation");
  require_no_divisible_held(partial, "charity extension");
  if (!check(inst, partial, Notion::EFX)) throw ContractError("charity extension needs an EFX start");

  CharityResult r{partial, partial.unallocated_goods(inst)};
  // Every step raises the utility sum or shrinks the pool.
  for (;;) {
    eliminate_envy_cycles(inst, r.allocation);
    if (try_add_from_pool(inst, r.allocation, r.pool)) continue;
    if (try_pool_exchange(inst, r.allocation, r.pool)) continue;
    break;
  }
  return r;
}

Allocation allocate_divisibles_efxm(const Instance& inst, const Allocation& partial) {
  validate_shape(inst, partial);
  require_no_divisible_held(partial, "divisible allocation");
  const std::size_t n = inst.agents();
  Allocation a = partial;
  std::vector<Rational> remaining(inst.divisible_count(), Rational(1));

  const std::size_t max_steps = 64 * (n + 1) * (n + 1) * (inst.divisible_count() + 1) + 1024;
  std::size_t steps = 0;
  for (std::size_t d = 0; d < inst.divisible_count();) {
    if (remaining[d].is_zero()) {
      ++d;
      continue;
    }
    if (++steps > max_steps) throw std::logic_error("divisible allocation did not settle");

    const std::vector<std::vector<Rational>> v = valuation_table(inst, a);
    // Weak envy i -> j: u_i(A_i) <= u_i(A_j). Agents reachable from the head of
    // a strict edge cannot receive divisible value yet.
    std::vector<bool> bad(n, false);
    std::vector<AgentId> frontier;
    for (AgentId i = 0; i < n; ++i) {
      for (AgentId j = 0; j < n; ++j) {
        if (i != j && v[i][i] < v[i][j] && !bad[j]) {
          bad[j] = true;
          frontier.push_back(j);
        }
      }
    }
    while (!frontier.empty()) {
      const AgentId k = frontier.back();
      frontier.pop_back();
      for (AgentId l = 0; l < n; ++l) {
        if (l != k && !bad[l] && v[k][k] <= v[k][l]) {
          bad[l] = true;
          frontier.push_back(l);
        }
      }
    }
    std::vector<AgentId> receivers;
    for (AgentId i = 0; i < n; ++i) {
      if (!bad[i]) receivers.push_back(i);
    }

    if (receivers.empty()) {
      // Some strict edge lies on a weak-envy cycle; rotating along it helps
      // one agent and hurts nobody.
      std::optional<std::vector<AgentId>> cycle;
      for (AgentId i = 0; i < n && !cycle; ++i) {
        for (AgentId j = 0; j < n && !cycle; ++j) {
          if (i == j || !(v[i][i] < v[i][j])) continue;
          std::vector<std::optional<AgentId>> parent(n);
          std::vector<bool> seen(n, false);
          std::vector<AgentId> queue{j};
          seen[j] = true;
          for (std::size_t q = 0; q < queue.size() && !seen[i]; ++q) {
            const AgentId k = queue[q];
            for (AgentId l = 0; l < n; ++l) {
              if (l != k && !seen[l] && v[k][k] <= v[k][l]) {
                seen[l] = true;
                parent[l] = k;
                queue.push_back(l);
              }
            }
          }
          if (!seen[i]) continue;
          std::vector<AgentId> path{i};
          for (AgentId k = i; k != j; k = *parent[k]) path.push_back(*parent[k]);
          // path runs i, ..., j backwards along weak edges; the cycle is i -> j -> ... -> i.
          std::vector<AgentId> c{i};
          c.insert(c.end(), path.rbegin(), path.rend() - 1);
          cycle = std::move(c);
        }
      }
      if (!cycle) throw std::logic_error("no rotatable weak-envy cycle found");
      rotate_bundles(a, *cycle);
      continue;
    }

    Rational t = remaining[d] / Rational(static_cast<long>(receivers.size()));
    for (AgentId k = 0; k < n; ++k) {
      if (!bad[k] || inst.div(k, d).is_zero()) continue;
      for (AgentId j : receivers) t = min(t, (v[k][k] - v[k][j]) / inst.div(k, d));
    }
    for (AgentId j : receivers) a[j].fractions[d] += t;
    remaining[d] -= t * Rational(static_cast<long>(receivers.size()));
  }
  return a;
}

PipelineTrace efxm_abs(const Instance& inst) {
  PipelineTrace trace;
  trace.matching = max_weight_matching_init(inst).allocation;
  CharityResult extended = efx_extend_with_charity(inst, trace.matching);
  trace.extended = extended.allocation;
  trace.pool = std::move(extended.pool);
  trace.final_allocation = allocate_divisibles_efxm(inst, trace.extended);
  return trace;
}

Allocation efm_complete(const Instance& inst) {
  const MatchingResult matching = max_weight_matching_init(inst);
  CharityResult extended = efx_extend_with_charity(inst, matching.allocation);
  Allocation a = std::move(extended.allocation);
  for (GoodId g : extended.pool) {
    eliminate_envy_cycles(inst, a);
    a[envy_graph(inst, a).sources().front()].add(g);
  }
  eliminate_envy_cycles(inst, a);
  return allocate_divisibles_efxm(inst, a);
}

}  // namespace fairdiv
