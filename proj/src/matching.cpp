#include <algorithm>
#include <optional>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

// Rectangular Hungarian method (rows <= cols) on costs -weight, kept exact
// with rational potentials.
std::vector<std::size_t> max_weight_assignment(const std::vector<std::vector<Rational>>& weights) {
  const std::size_t rows = weights.size();
  if (rows == 0) return {};
  const std::size_t cols = weights.front().size();
  for (const auto& r : weights) {
    if (r.size() != cols) throw DimensionError("ragged weight matrix");
  }
  if (rows > cols) throw DimensionError("assignment needs at least as many columns as rows");

  // 1-based arrays; column 0 is the virtual start column.
  std::vector<Rational> u(rows + 1), v(cols + 1);
  std::vector<std::size_t> owner(cols + 1, 0), way(cols + 1, 0);
  for (std::size_t r = 1; r <= rows; ++r) {
    owner[0] = r;
    std::size_t j0 = 0;
    std::vector<std::optional<Rational>> minv(cols + 1);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = owner[j0];
      std::optional<Rational> delta;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        Rational cur = -weights[i0 - 1][j - 1] - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[owner[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (owner[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      owner[j0] = owner[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> match(rows, 0);
  for (std::size_t j = 1; j <= cols; ++j) {
    if (owner[j] != 0) match[owner[j] - 1] = j - 1;
  }
  return match;
}

MatchingResult max_weight_matching_init(const Instance& inst) {
  const std::size_t n = inst.agents();
  const std::size_t m = inst.indivisible_count();
  const std::size_t padded = std::max(m, n);
  std::vector<std::vector<Rational>> w(n, std::vector<Rational>(padded));
  for (AgentId i = 0; i < n; ++i) {
    for (GoodId g = 0; g < m; ++g) w[i][g] = inst.indiv(i, g);
  }
  MatchingResult result{Allocation::empty(inst), max_weight_assignment(w), Rational(0)};
  for (AgentId i = 0; i < n; ++i) {
    const GoodId g = result.matched[i];
    result.weight += w[i][g];
    if (g < m) result.allocation[i].goods.push_back(g);
  }
  return result;
}

}  // namespace fairdiv
