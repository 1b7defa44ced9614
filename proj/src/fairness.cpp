#include "fairdiv/fairness.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <string>

#include "fairdiv/error.hpp"

namespace fairdiv {

std::string_view to_string(Notion n) {
  switch (n) {
    case Notion::EF: return "EF";
    case Notion::EF1: return "EF1";
    case Notion::EFX: return "EFX";
    case Notion::EFM: return "EFM";
    case Notion::EFXM: return "EFXM";
  }
  return "?";
}

Notion parse_notion(std::string_view name) {
  std::string up(name);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (Notion n : kAllNotions) {
    if (up == to_string(n)) return n;
  }
  throw ArgumentError("unknown fairness notion '" + std::string(name) + "'");
}

std::vector<std::vector<Rational>> valuation_table(const Instance& inst, const Allocation& a) {
  validate_shape(inst, a);
  const std::size_t n = inst.agents();
  std::vector<std::vector<Rational>> v(n, std::vector<Rational>(n));
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = 0; j < n; ++j) v[i][j] = utility(inst, i, a[j]);
  }
  return v;
}

bool envies(const Instance& inst, AgentId i, AgentId j, const Allocation& a) {
  validate_shape(inst, a);
  if (i >= inst.agents() || j >= inst.agents()) throw DimensionError("agent index out of range");
  return utility(inst, i, a[i]) < utility(inst, i, a[j]);
}

bool strongly_envies(const Instance& inst, AgentId i, AgentId j, const Allocation& a) {
  validate_shape(inst, a);
  if (i >= inst.agents() || j >= inst.agents()) throw DimensionError("agent index out of range");
  const Rational own = utility(inst, i, a[i]);
  const Rational other = utility(inst, i, a[j]);
  if (!(own < other)) return false;
  return std::all_of(a[j].goods.begin(), a[j].goods.end(),
                     [&](GoodId g) { return own < other - inst.indiv(i, g); });
}

namespace {

// The extreme-valued good of `goods` for agent i; lowest good
// index wins ties. `goods` must be non-empty.
GoodId extreme_good(const Instance& inst, AgentId i, const std::vector<GoodId>& goods,
                    bool want_max) {
  GoodId best = goods.front();
  for (GoodId g : goods) {
    const Rational& v = inst.indiv(i, g);
    const Rational& b = inst.indiv(i, best);
    if (want_max ? v > b : v < b) best = g;
  }
  return best;
}

}  // namespace

CheckResult check(const Instance& inst, const Allocation& a, Notion notion) {
  const auto value = valuation_table(inst, a);
  const std::size_t n = inst.agents();
  for (AgentId i = 0; i < n; ++i) {
    for (AgentId j = 0; j < n; ++j) {
      if (i == j || value[i][i] >= value[i][j]) continue;
      const Bundle& bj = a[j];
      const bool ef_required =
          notion == Notion::EF ||
          ((notion == Notion::EFM || notion == Notion::EFXM) && bj.holds_divisible()) ||
          bj.goods.empty();
      if (ef_required) return {false, Violation{i, j, std::nullopt}};
      const bool any_good = notion == Notion::EFX || notion == Notion::EFXM;
      // EF1 removes the good i values most; EFX the good i values least.
      const GoodId g = extreme_good(inst, i, bj.goods, !any_good);
      if (value[i][i] < value[i][j] - inst.indiv(i, g)) {
        return {false, Violation{i, j, g}};
      }
    }
  }
  return {};
}

std::size_t EnvyGraph::edge_count() const {
  std::size_t c = 0;
  for (const auto& row : adj_) c += static_cast<std::size_t>(std::count(row.begin(), row.end(), true));
  return c;
}

std::size_t EnvyGraph::in_degree(AgentId j) const {
  std::size_t d = 0;
  for (AgentId i = 0; i < n_; ++i) d += adj_[i][j] ? 1 : 0;
  return d;
}

std::vector<AgentId> EnvyGraph::sources() const {
  std::vector<AgentId> out;
  for (AgentId j = 0; j < n_; ++j) {
    if (in_degree(j) == 0) out.push_back(j);
  }
  return out;
}

std::optional<std::vector<AgentId>> EnvyGraph::find_cycle() const {
  std::vector<int> colour(n_, 0);
  std::vector<AgentId> stack;
  std::optional<std::vector<AgentId>> found;
  std::function<bool(AgentId)> dfs = [&](AgentId u) {
    colour[u] = 1;
    stack.push_back(u);
    for (AgentId v = 0; v < n_; ++v) {
      if (!adj_[u][v]) continue;
      if (colour[v] == 1) {
        auto it = std::find(stack.begin(), stack.end(), v);
        found = std::vector<AgentId>(it, stack.end());
        return true;
      }
      if (colour[v] == 0 && dfs(v)) return true;
    }
    stack.pop_back();
    colour[u] = 2;
    return false;
  };
  for (AgentId s = 0; s < n_; ++s) {
    if (colour[s] == 0 && dfs(s)) return found;
  }
  return std::nullopt;
}

EnvyGraph envy_graph(const Instance& inst, const Allocation& a) {
  const auto value = valuation_table(inst, a);
  EnvyGraph g(inst.agents());
  for (AgentId i = 0; i < inst.agents(); ++i) {
    for (AgentId j = 0; j < inst.agents(); ++j) {
      if (i != j && value[i][i] < value[i][j]) g.set_edge(i, j);
    }
  }
  return g;
}

}  // namespace fairdiv
