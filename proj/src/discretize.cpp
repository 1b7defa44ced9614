#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"

namespace fairdiv {

Discretized discretize(const Instance& inst, std::size_t level) {
  if (level == 0) throw ArgumentError("discretization level must be positive");
  const std::size_t n = inst.agents();
  const std::size_t m = inst.indivisible_count();
  const std::size_t md = inst.divisible_count();
  PieceMap map{level, m, md, {}};
  map.sources.reserve(m + md * level);
  UtilityMatrix u(n, m + md * level);
  for (GoodId g = 0; g < m; ++g) {
    map.sources.push_back({false, g, 0});
    for (AgentId i = 0; i < n; ++i) u(i, g) = inst.indiv(i, g);
  }
  const Rational piece_share(1, static_cast<long>(level));
  for (std::size_t k = 0; k < md; ++k) {
    for (std::size_t t = 0; t < level; ++t) {
      const std::size_t col = m + k * level + t;
      map.sources.push_back({true, k, t});
      for (AgentId i = 0; i < n; ++i) u(i, col) = inst.div(i, k) * piece_share;
    }
  }
  return {Instance(std::move(u), UtilityMatrix(n, 0)), std::move(map)};
}

Allocation lift(const Allocation& discrete, const PieceMap& map) {
  Allocation out;
  out.bundles.reserve(discrete.size());
  for (const auto& b : discrete.bundles) {
    if (!b.fractions.empty()) throw DimensionError("discretized bundles carry no divisible fractions");
    Bundle lifted{{}, std::vector<Rational>(map.divisible)};
    std::vector<long> pieces(map.divisible, 0);
    for (GoodId g : b.goods) {
      if (g >= map.sources.size()) throw DimensionError("piece index out of range");
      const PieceSource& src = map.sources[g];
      if (src.divisible) {
        ++pieces[src.good];
      } else {
        lifted.goods.push_back(src.good);
      }
    }
    for (std::size_t k = 0; k < map.divisible; ++k) {
      lifted.fractions[k] = Rational(pieces[k], static_cast<long>(map.level));
    }
    out.bundles.push_back(std::move(lifted));
  }
  return out;
}

}  // namespace fairdiv
