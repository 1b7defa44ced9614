#include <algorithm>
#include <functional>
#include <string>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

PartitionResult balanced_partition(std::span<const Rational> values, std::size_t k) {
  if (k != 2 && k != 3) throw ArgumentError("balanced partition supports k = 2 or 3");
  for (const auto& v : values) {
    if (v.sign() < 0) throw ArgumentError("negative value in balanced partition");
  }
  const std::size_t n = values.size();
  std::vector<Rational> suffix(n + 1);
  for (std::size_t t = n; t-- > 0;) suffix[t] = suffix[t + 1] + values[t];

  // Restricted-growth assignment: item t may open at most one new part, so
  // each unordered partition is visited once.
  std::vector<std::size_t> part(n, 0);
  std::vector<Rational> sums(k);
  std::vector<std::size_t> best_part(n, 0);
  Rational best_min(-1);

  std::function<void(std::size_t, std::size_t)> search = [&](std::size_t t, std::size_t used) {
    if (t == n) {
      Rational lo = sums[0];
      for (std::size_t p = 1; p < k; ++p) lo = min(lo, sums[p]);
      if (lo > best_min) {
        best_min = lo;
        best_part = part;
      }
      return;
    }
    // The final minimum cannot exceed the smallest current sum plus everything left.
    Rational lo = sums[0];
    for (std::size_t p = 1; p < k; ++p) lo = min(lo, sums[p]);
    if (best_min.sign() >= 0 && lo + suffix[t] <= best_min) return;
    const std::size_t limit = std::min(k, used + 1);
    for (std::size_t p = 0; p < limit; ++p) {
      part[t] = p;
      sums[p] += values[t];
      search(t + 1, std::max(used, p + 1));
      sums[p] -= values[t];
    }
  };
  search(0, 0);

  PartitionResult result;
  result.parts.assign(k, {});
  for (std::size_t t = 0; t < n; ++t) result.parts[best_part[t]].push_back(t);
  result.min_value = best_min.sign() < 0 ? Rational(0) : best_min;
  return result;
}

BundlePair most_equal_partition(const Instance& inst, AgentId agent) {
  if (inst.agents() != 2) throw ArityError("most-equal partition is defined for two agents");
  if (agent >= 2) throw DimensionError("agent index out of range");

  std::vector<GoodId> positive;
  std::vector<GoodId> zero;
  for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
    (inst.indiv(agent, g).is_zero() ? zero : positive).push_back(g);
  }
  if (positive.size() > kMaxPartitionGoods) {
    throw ArgumentError("most-equal partition enumerates at most " +
                        std::to_string(kMaxPartitionGoods) + " valued indivisible goods, got " +
                        std::to_string(positive.size()));
  }
  Rational indiv_total;
  for (GoodId g : positive) indiv_total += inst.indiv(agent, g);
  Rational div_total;
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) div_total += inst.div(agent, k);

  // Gray-code walk over subsets S of the valued goods; gap of the indivisible
  // split is |2 u(S) - total|, the divisible goods then close up to div_total.
  const std::size_t p = positive.size();
  const std::uint64_t count = std::uint64_t{1} << p;
  Rational side;  // u(S)
  std::uint64_t best_mask = 0;
  Rational best_gap;
  bool have_best = false;
  std::uint64_t gray = 0;
  for (std::uint64_t step = 0; step < count; ++step) {
    if (step > 0) {
      const std::uint64_t next = step ^ (step >> 1);
      const std::uint64_t flipped = next ^ gray;
      const auto bit = static_cast<std::size_t>(__builtin_ctzll(flipped));
      if (next & flipped) {
        side += inst.indiv(agent, positive[bit]);
      } else {
        side -= inst.indiv(agent, positive[bit]);
      }
      gray = next;
    }
    Rational gap = abs(side + side - indiv_total) - div_total;
    if (gap.sign() < 0) gap = Rational(0);
    if (!have_best || gap < best_gap || (gap == best_gap && gray < best_mask)) {
      best_gap = gap;
      best_mask = gray;
      have_best = true;
    }
  }

  std::vector<GoodId> in_set;
  std::vector<GoodId> out_set;
  Rational set_value;
  for (std::size_t b = 0; b < p; ++b) {
    if (best_mask >> b & 1U) {
      in_set.push_back(positive[b]);
      set_value += inst.indiv(agent, positive[b]);
    } else {
      out_set.push_back(positive[b]);
    }
  }
  const Rational out_value = indiv_total - set_value;
  if (set_value < out_value) std::swap(in_set, out_set);
  const Rational indiv_gap = abs(set_value - out_value);

  BundlePair result{Bundle::empty(inst), Bundle::empty(inst), best_gap};
  result.higher.goods = in_set;
  result.lower.goods = out_set;
  for (GoodId g : zero) result.lower.add(g);

  if (indiv_gap >= div_total) {
    for (std::size_t k = 0; k < inst.divisible_count(); ++k) result.lower.fractions[k] = Rational(1);
  } else {
    // Lower side receives (div_total + indiv_gap) / 2 of divisible value,
    // poured in index order; the rest goes to the higher side.
    Rational need = (div_total + indiv_gap) / Rational(2);
    for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
      const Rational& v = inst.div(agent, k);
      if (v.is_zero()) {
        result.lower.fractions[k] = Rational(1);
        continue;
      }
      Rational take = need >= v ? Rational(1) : need / v;
      need -= take * v;
      result.lower.fractions[k] = take;
      result.higher.fractions[k] = Rational(1) - take;
    }
  }
  return result;
}

}  // namespace fairdiv
