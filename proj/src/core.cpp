#include "fairdiv/core.hpp"

#include <algorithm>
#include <string>

#include "fairdiv/error.hpp"

namespace fairdiv {

UtilityMatrix UtilityMatrix::from_rows(const std::vector<std::vector<Rational>>& rows,
                                       std::size_t cols_if_empty) {
  const std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  UtilityMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) {
      throw DimensionError("row " + std::to_string(r) + " has " +
                           std::to_string(rows[r].size()) + " entries, expected " +
                           std::to_string(cols));
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Instance::Instance(UtilityMatrix indivisible, UtilityMatrix divisible)
    : indiv_(std::move(indivisible)), div_(std::move(divisible)) {
  if (indiv_.rows() == 0) throw DimensionError("instance needs at least one agent");
  if (div_.rows() != indiv_.rows()) {
    throw DimensionError("indivisible and divisible matrices disagree on agent count");
  }
  totals_.resize(agents());
  scaled_ = true;
  for (AgentId i = 0; i < agents(); ++i) {
    Rational t;
    for (const auto& v : indiv_.row(i)) {
      if (v.sign() < 0) throw ArgumentError("negative utility for agent " + std::to_string(i));
      t += v;
    }
    for (const auto& v : div_.row(i)) {
      if (v.sign() < 0) throw ArgumentError("negative utility for agent " + std::to_string(i));
      t += v;
    }
    if (t != Rational(1)) scaled_ = false;
    totals_[i] = std::move(t);
  }
}

namespace {

// Row vectors may be empty when the instance has no goods of that kind; the
// agent count then comes from the other matrix.
UtilityMatrix rows_to_matrix(const std::vector<std::vector<Rational>>& rows, std::size_t agents) {
  if (rows.empty()) return UtilityMatrix(agents, 0);
  return UtilityMatrix::from_rows(rows);
}

}  // namespace

Instance::Instance(const std::vector<std::vector<Rational>>& indivisible,
                   const std::vector<std::vector<Rational>>& divisible)
    : Instance(rows_to_matrix(indivisible, divisible.size()),
               rows_to_matrix(divisible, indivisible.size())) {}

bool Bundle::contains(GoodId g) const {
  return std::binary_search(goods.begin(), goods.end(), g);
}

void Bundle::add(GoodId g) {
  auto it = std::lower_bound(goods.begin(), goods.end(), g);
  if (it == goods.end() || *it != g) goods.insert(it, g);
}

void Bundle::remove(GoodId g) {
  auto it = std::lower_bound(goods.begin(), goods.end(), g);
  if (it != goods.end() && *it == g) goods.erase(it);
}

bool Bundle::holds_divisible() const {
  return std::any_of(fractions.begin(), fractions.end(),
                     [](const Rational& x) { return x.sign() > 0; });
}

Allocation Allocation::empty(const Instance& inst) {
  return Allocation{std::vector<Bundle>(inst.agents(), Bundle::empty(inst))};
}

std::vector<GoodId> Allocation::unallocated_goods(const Instance& inst) const {
  std::vector<bool> held(inst.indivisible_count(), false);
  for (const auto& b : bundles) {
    for (GoodId g : b.goods) {
      if (g < held.size()) held[g] = true;
    }
  }
  std::vector<GoodId> out;
  for (GoodId g = 0; g < held.size(); ++g) {
    if (!held[g]) out.push_back(g);
  }
  return out;
}

void validate_bundle(const Instance& inst, const Bundle& b) {
  if (b.fractions.size() != inst.divisible_count()) {
    throw DimensionError("bundle has " + std::to_string(b.fractions.size()) +
                         " divisible fractions, instance has " +
                         std::to_string(inst.divisible_count()));
  }
  for (std::size_t t = 0; t < b.goods.size(); ++t) {
    if (b.goods[t] >= inst.indivisible_count()) {
      throw DimensionError("indivisible good " + std::to_string(b.goods[t]) + " out of range");
    }
    if (t > 0 && b.goods[t - 1] >= b.goods[t]) {
      throw DimensionError("bundle goods must be sorted and distinct");
    }
  }
  for (const auto& x : b.fractions) {
    if (x.sign() < 0 || x > Rational(1)) {
      throw DimensionError("divisible fraction " + x.str() + " outside [0, 1]");
    }
  }
}

void validate_shape(const Instance& inst, const Allocation& a) {
  if (a.size() != inst.agents()) {
    throw DimensionError("allocation has " + std::to_string(a.size()) + " bundles for " +
                         std::to_string(inst.agents()) + " agents");
  }
  for (const auto& b : a.bundles) validate_bundle(inst, b);
}

Rational utility_of_goods(const Instance& inst, AgentId agent, std::span<const GoodId> goods) {
  if (agent >= inst.agents()) throw DimensionError("agent index out of range");
  Rational u;
  for (GoodId g : goods) {
    if (g >= inst.indivisible_count()) throw DimensionError("good index out of range");
    u += inst.indiv(agent, g);
  }
  return u;
}

Rational utility(const Instance& inst, AgentId agent, const Bundle& b) {
  if (agent >= inst.agents()) throw DimensionError("agent index out of range");
  validate_bundle(inst, b);
  Rational u = utility_of_goods(inst, agent, b.goods);
  for (std::size_t k = 0; k < b.fractions.size(); ++k) {
    if (!b.fractions[k].is_zero()) u += b.fractions[k] * inst.div(agent, k);
  }
  return u;
}

bool is_feasible(const Instance& inst, const Allocation& a) {
  validate_shape(inst, a);
  std::vector<bool> held(inst.indivisible_count(), false);
  for (const auto& b : a.bundles) {
    for (GoodId g : b.goods) {
      if (held[g]) return false;
      held[g] = true;
    }
  }
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
    Rational sum;
    for (const auto& b : a.bundles) sum += b.fractions[k];
    if (sum > Rational(1)) return false;
  }
  return true;
}

bool is_complete(const Instance& inst, const Allocation& a) {
  if (!is_feasible(inst, a)) return false;
  std::size_t held = 0;
  for (const auto& b : a.bundles) held += b.goods.size();
  if (held != inst.indivisible_count()) return false;
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
    Rational sum;
    for (const auto& b : a.bundles) sum += b.fractions[k];
    if (sum != Rational(1)) return false;
  }
  return true;
}

Rational social_welfare(const Instance& inst, const Allocation& a) {
  if (!is_feasible(inst, a)) throw ContractError("social welfare of an infeasible allocation");
  Rational sw;
  for (AgentId i = 0; i < inst.agents(); ++i) sw += utility(inst, i, a[i]);
  return sw;
}

namespace {

AgentId best_agent(const Instance& inst, GoodId g, bool divisible) {
  AgentId best = 0;
  for (AgentId i = 1; i < inst.agents(); ++i) {
    const Rational& v = divisible ? inst.div(i, g) : inst.indiv(i, g);
    const Rational& b = divisible ? inst.div(best, g) : inst.indiv(best, g);
    if (v > b) best = i;
  }
  return best;
}

}  // namespace

Rational optimal_welfare(const Instance& inst) {
  Rational opt;
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    opt += inst.indiv(best_agent(inst, g, false), g);
  }
  for (GoodId k = 0; k < inst.divisible_count(); ++k) {
    opt += inst.div(best_agent(inst, k, true), k);
  }
  return opt;
}

Allocation optimal_allocation(const Instance& inst) {
  Allocation a = Allocation::empty(inst);
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    a[best_agent(inst, g, false)].goods.push_back(g);
  }
  for (GoodId k = 0; k < inst.divisible_count(); ++k) {
    a[best_agent(inst, k, true)].fractions[k] = Rational(1);
  }
  return a;
}

Rational total_utility_sum(const Instance& inst) {
  Rational s;
  for (AgentId i = 0; i < inst.agents(); ++i) s += inst.total(i);
  return s;
}

Instance scale(const Instance& inst) {
  if (inst.is_scaled()) return inst;
  UtilityMatrix indiv = inst.indivisible_utilities();
  UtilityMatrix div = inst.divisible_utilities();
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const Rational& t = inst.total(i);
    if (t.is_zero()) {
      throw ScalingError(i, "agent " + std::to_string(i + 1) +
                                " has zero total utility and cannot be scaled");
    }
    for (std::size_t g = 0; g < indiv.cols(); ++g) indiv(i, g) /= t;
    for (std::size_t k = 0; k < div.cols(); ++k) div(i, k) /= t;
  }
  return Instance(std::move(indiv), std::move(div));
}

Rational surplus(const Instance& inst, std::span<const GoodId> goods) {
  if (inst.agents() != 2) throw ArityError("surplus is defined for two agents");
  Rational sp;
  for (GoodId g : goods) {
    if (g >= inst.indivisible_count()) throw DimensionError("good index out of range");
    sp += inst.indiv(0, g) - inst.indiv(1, g);
  }
  return sp;
}

std::vector<GoodId> agent1_favoured_goods(const Instance& inst) {
  if (inst.agents() != 2) throw ArityError("T_1 is defined for two agents");
  std::vector<GoodId> t1;
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    if (inst.indiv(0, g) >= inst.indiv(1, g)) t1.push_back(g);
  }
  return t1;
}

std::string describe(const Bundle& b) {
  std::string out = "{";
  for (std::size_t t = 0; t < b.goods.size(); ++t) {
    if (t > 0) out += ", ";
    out += "g" + std::to_string(b.goods[t] + 1);
  }
  bool first_fraction = true;
  for (std::size_t k = 0; k < b.fractions.size(); ++k) {
    if (b.fractions[k].is_zero()) continue;
    out += first_fraction ? (b.goods.empty() ? "" : "; ") : ", ";
    first_fraction = false;
    out += "d" + std::to_string(k + 1);
    if (b.fractions[k] != Rational(1)) out += " " + b.fractions[k].str();
  }
  return out + "}";
}

std::string describe(const Allocation& a) {
  std::string out = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i > 0) out += " | ";
    out += describe(a[i]);
  }
  return out + ")";
}

}  // namespace fairdiv
