#pragma once

// Shared generators and slow reference implementations for the tests. The
// references follow the definitions literally and avoid library shortcuts.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "fairdiv/core.hpp"
#include "fairdiv/fairness.hpp"

namespace testing {

using namespace fairdiv;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return (rng_() & 1U) != 0; }
  std::uint64_t seed() { return rng_(); }

  // Small denominators so that ties show up often.
  Rational value(long max_den = 8) {
    const long q = static_cast<long>(between(1, static_cast<std::size_t>(max_den)));
    return Rational(static_cast<long>(below(static_cast<std::size_t>(q) + 1)), q);
  }

  // Scaled instances get at least one good.
  Instance instance(std::size_t n, std::size_t m, std::size_t md, bool scaled = false, long max_den = 8) {
    if (scaled && m + md == 0) m = 1;
    for (;;) {
      std::vector<std::vector<Rational>> a(n, std::vector<Rational>(m)), d(n, std::vector<Rational>(md));
      for (auto& row : a) {
        for (auto& v : row) v = value(max_den);
      }
      for (auto& row : d) {
        for (auto& v : row) v = value(max_den);
      }
      Instance inst(a, d);
      if (!scaled) return inst;
      bool positive = true;
      for (AgentId i = 0; i < n; ++i) positive = positive && inst.total(i).sign() > 0;
      if (positive) return scale(inst);
    }
  }

  // Random feasible allocation; complete when requested. Fractions are
  // multiples of 1/level when level > 0.
  Allocation allocation(const Instance& inst, bool complete, std::size_t level = 0) {
    const std::size_t n = inst.agents();
    Allocation a = Allocation::empty(inst);
    for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
      const std::size_t o = below(complete ? n : n + 1);
      if (o < n) a[o].goods.push_back(g);
    }
    for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
      const std::size_t slots = complete ? n : n + 1;
      if (level > 0) {
        std::vector<long> cnt(slots, 0);
        for (std::size_t p = 0; p < level; ++p) ++cnt[below(slots)];
        for (AgentId i = 0; i < n; ++i) a[i].fractions[k] = Rational(cnt[i], static_cast<long>(level));
      } else {
        std::vector<long> w(slots);
        long total = 0;
        for (auto& x : w) total += (x = static_cast<long>(below(4)));
        if (total == 0) {
          w[below(complete ? n : slots)] = 1;
          total = 1;
        }
        for (AgentId i = 0; i < n; ++i) a[i].fractions[k] = Rational(w[i], total);
      }
    }
    return a;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline Rational value_of(const Instance& inst, AgentId i, const Bundle& b) {
  Rational s;
  for (GoodId g : b.goods) s += inst.indiv(i, g);
  for (std::size_t k = 0; k < b.fractions.size(); ++k) s += b.fractions[k] * inst.div(i, k);
  return s;
}

// Literal reading of the five definitions: every removal is tried.
inline bool reference_check(const Instance& inst, const Allocation& a, Notion notion) {
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const Rational own = value_of(inst, i, a[i]);
    for (AgentId j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      const Rational other = value_of(inst, i, a[j]);
      if (own >= other) continue;
      const auto& goods = a[j].goods;
      const bool has_div = std::any_of(a[j].fractions.begin(), a[j].fractions.end(),
                                       [](const Rational& f) { return f.sign() > 0; });
      bool ok = false;
      const bool one_style = notion == Notion::EF1 || notion == Notion::EFM;
      const bool any_style = notion == Notion::EFX || notion == Notion::EFXM;
      const bool needs_ef = notion == Notion::EF || ((notion == Notion::EFM || notion == Notion::EFXM) && has_div);
      if (!needs_ef && !goods.empty()) {
        if (one_style) {
          ok = std::any_of(goods.begin(), goods.end(), [&](GoodId g) { return own >= other - inst.indiv(i, g); });
        } else if (any_style) {
          ok = std::all_of(goods.begin(), goods.end(), [&](GoodId g) { return own >= other - inst.indiv(i, g); });
        }
      }
      if (!ok) return false;
    }
  }
  return true;
}

// Same notions on the instance cut into `level` pieces per divisible good,
// written from the piece-level reading: a bundle holding pieces is judged by
// removing one piece under EFM/EFXM.
inline bool reference_check_level(const Instance& inst, const Allocation& a, Notion notion, std::size_t level) {
  const Rational lv(static_cast<long>(level));
  for (AgentId i = 0; i < inst.agents(); ++i) {
    const Rational own = value_of(inst, i, a[i]);
    for (AgentId j = 0; j < inst.agents(); ++j) {
      if (i == j) continue;
      const Rational other = value_of(inst, i, a[j]);
      if (own >= other) continue;
      std::vector<Rational> real, pieces;
      for (GoodId g : a[j].goods) real.push_back(inst.indiv(i, g));
      for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
        if (a[j].fractions[k].sign() > 0) pieces.push_back(inst.div(i, k) / lv);
      }
      auto some = [&](const std::vector<Rational>& c) {
        return std::any_of(c.begin(), c.end(), [&](const Rational& v) { return own >= other - v; });
      };
      auto every = [&](const std::vector<Rational>& c) {
        return !c.empty() && std::all_of(c.begin(), c.end(), [&](const Rational& v) { return own >= other - v; });
      };
      std::vector<Rational> all = real;
      all.insert(all.end(), pieces.begin(), pieces.end());
      bool ok = false;
      switch (notion) {
        case Notion::EF: ok = false; break;
        case Notion::EF1: ok = some(all); break;
        case Notion::EFX: ok = every(all); break;
        case Notion::EFM: ok = pieces.empty() ? some(real) : some(pieces); break;
        case Notion::EFXM: ok = pieces.empty() ? every(real) : every(pieces); break;
      }
      if (!ok) return false;
    }
  }
  return true;
}

// Maximum welfare with every good, divisible ones included, given whole to
// one agent; every assignment is tried.
inline Rational reference_optimum(const Instance& inst) {
  const std::size_t n = inst.agents(), m = inst.indivisible_count(), md = inst.divisible_count();
  std::vector<std::size_t> owner(m + md, 0);
  Rational best;
  for (;;) {
    Rational sw;
    for (std::size_t g = 0; g < m; ++g) sw += inst.indiv(owner[g], g);
    for (std::size_t k = 0; k < md; ++k) sw += inst.div(owner[m + k], k);
    best = max(best, sw);
    std::size_t pos = owner.size();
    while (pos > 0 && owner[pos - 1] + 1 == n) owner[--pos] = 0;
    if (pos == 0) return best;
    ++owner[pos - 1];
  }
}

inline std::vector<std::vector<std::size_t>> all_assignments(std::size_t items, std::size_t slots) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(items, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t pos = items;
    while (pos > 0 && cur[pos - 1] + 1 == slots) cur[--pos] = 0;
    if (pos == 0) return out;
    ++cur[pos - 1];
  }
}

inline bool column_sums_are_one(const Instance& inst, const Allocation& a) {
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
    Rational s;
    for (const auto& b : a.bundles) s += b.fractions[k];
    if (s != Rational(1)) return false;
  }
  return true;
}

}  // namespace testing
