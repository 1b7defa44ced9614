#include "doctest.h"

#include <algorithm>
#include <optional>
#include <set>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/instances.hpp"
#include "fairdiv/oracle.hpp"
#include "support.hpp"

using namespace fairdiv;
using testing::Gen;

namespace {

Rational R(long p, long q = 1) { return Rational(p, q); }

OracleConfig config(Notion notion, bool partial, std::size_t level = 1) {
  OracleConfig cfg;
  cfg.notion = notion;
  cfg.allow_partial = partial;
  cfg.level = level;
  return cfg;
}

struct SlowResult {
  std::optional<Rational> best;
  Allocation witness;
  std::set<std::string> fair;  // described allocations
};

// Every assignment of real goods and of each piece to a slot, evaluated in
// mixed form with fractions = pieces / level.
SlowResult slow_best(const Instance& inst, Notion notion, bool partial, std::size_t level) {
  const std::size_t n = inst.agents(), m = inst.indivisible_count(), md = inst.divisible_count();
  const std::size_t slots = partial ? n + 1 : n;
  SlowResult out;
  for (const auto& owner : testing::all_assignments(m + md * level, slots)) {
    Allocation a = Allocation::empty(inst);
    for (GoodId g = 0; g < m; ++g) {
      if (owner[g] < n) a[owner[g]].goods.push_back(g);
    }
    for (std::size_t k = 0; k < md; ++k) {
      std::vector<long> cnt(n, 0);
      for (std::size_t p = 0; p < level; ++p) {
        const std::size_t s = owner[m + k * level + p];
        if (s < n) ++cnt[s];
      }
      for (AgentId i = 0; i < n; ++i) a[i].fractions[k] = Rational(cnt[i], static_cast<long>(level));
    }
    if (!testing::reference_check_level(inst, a, notion, level)) continue;
    Rational sw;
    for (AgentId i = 0; i < n; ++i) sw += testing::value_of(inst, i, a[i]);
    out.fair.insert(describe(a));
    if (!out.best || sw > *out.best) {
      out.best = sw;
      out.witness = a;
    }
  }
  return out;
}

Instance big_denominators(const std::vector<std::string>& dens) {
  std::vector<std::vector<Rational>> ind(2), div(2);
  for (std::size_t t = 0; t < dens.size(); ++t) {
    const std::string& q = dens[t];
    ind[0].push_back(Rational::parse(std::to_string(t + 1) + "/" + q));
    ind[1].push_back(Rational::parse(std::to_string(2 * t + 1) + "/" + q));
  }
  div[0].push_back(Rational::parse("3/" + dens.front()));
  div[1].push_back(Rational::parse("1/" + dens.back()));
  return Instance(ind, div);
}

}  // namespace

TEST_CASE("enumeration counts") {
  const Instance inst({{R(1), R(1)}, {R(1), R(1)}}, {{}, {}});
  std::size_t count = 0;
  enumerate_allocations(inst, false, [&](const Allocation&) { ++count; });
  CHECK(count == 4);
  count = 0;
  enumerate_allocations(inst, true, [&](const Allocation&) { ++count; });
  CHECK(count == 9);
  CHECK(allocation_count(inst, false) == 4);
  CHECK(allocation_count(inst, true) == 9);
}

TEST_CASE("enumeration visits each assignment once in lexicographic order") {
  Gen gen(51);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = gen.between(1, 3), m = gen.below(5);
    const bool partial = gen.coin();
    const Instance inst = gen.instance(n, m, 0);
    std::vector<Allocation> seen;
    enumerate_allocations(inst, partial, [&](const Allocation& a) { seen.push_back(a); });
    const auto expect = testing::all_assignments(m, partial ? n + 1 : n);
    REQUIRE(seen.size() == expect.size());
    for (std::size_t x = 0; x < seen.size(); ++x) {
      Allocation a = Allocation::empty(inst);
      for (GoodId g = 0; g < m; ++g) {
        if (expect[x][g] < n) a[expect[x][g]].goods.push_back(g);
      }
      CHECK(seen[x] == a);
      if (!partial) CHECK(is_complete(inst, seen[x]));
    }
  }
}

TEST_CASE("enumeration guards") {
  const Instance mixed({{R(1)}, {R(1)}}, {{R(1)}, {R(1)}});
  CHECK_THROWS_AS(enumerate_allocations(mixed, false, [](const Allocation&) {}), ContractError);
  const Instance wide(std::vector<std::vector<Rational>>(2, std::vector<Rational>(10, R(1))), {{}, {}});
  CHECK_THROWS_AS(enumerate_allocations(wide, true, [](const Allocation&) {}, 1000), BudgetError);
  try {
    enumerate_allocations(wide, true, [](const Allocation&) {}, 1000);
  } catch (const BudgetError& e) {
    CHECK(e.required() == doctest::Approx(59049));
    CHECK(e.budget() == doctest::Approx(1000));
  }
}

TEST_CASE("allocation classes") {
  const Instance inst = thm34_lower_bound(R(1, 100));
  CHECK(allocation_classes(inst, config(Notion::EFM, true, 100)) == doctest::Approx(3.0 * 5151 * 5151));
  CHECK(allocation_classes(inst, config(Notion::EF1, false, 4)) == doctest::Approx(2.0 * 5 * 5));
  CHECK(default_allow_partial(Notion::EFM));
  CHECK(default_allow_partial(Notion::EFX));
  CHECK(default_allow_partial(Notion::EFXM));
  CHECK_FALSE(default_allow_partial(Notion::EF1));
  CHECK_FALSE(default_allow_partial(Notion::EF));
  CHECK(default_config(Notion::EFXM, 7).level == 7);
}

TEST_CASE("discretized check coincides with the plain check without divisible goods") {
  Gen gen(52);
  for (int t = 0; t < 1000; ++t) {
    const Instance inst = gen.instance(gen.between(2, 4), gen.below(6), 0, false, 4);
    const Allocation a = gen.allocation(inst, gen.coin());
    for (Notion notion : kAllNotions) {
      CHECK(check_at_level(inst, a, notion, 1 + gen.below(3)) == check(inst, a, notion).satisfied);
    }
  }
}

TEST_CASE("discretized check agrees with the piece-level reading") {
  Gen gen(53);
  for (int t = 0; t < 3000; ++t) {
    const std::size_t level = gen.between(1, 5);
    const Instance inst = gen.instance(gen.between(2, 4), gen.below(4), gen.between(1, 3), gen.coin(), 4);
    const Allocation a = gen.allocation(inst, gen.coin(), level);
    for (Notion notion : kAllNotions) {
      CAPTURE(describe(a));
      CAPTURE(to_string(notion));
      CHECK(check_at_level(inst, a, notion, level) == testing::reference_check_level(inst, a, notion, level));
    }
    // Envy-freeness is the same predicate at every level.
    CHECK(check_at_level(inst, a, Notion::EF, level) == check(inst, a, Notion::EF).satisfied);
  }
}

TEST_CASE("discretized check rejects fractions off the grid") {
  const Instance inst({{R(1)}, {R(1)}}, {{R(1)}, {R(1)}});
  Allocation a = Allocation::empty(inst);
  a[0].fractions[0] = R(1, 3);
  CHECK_THROWS_AS(check_at_level(inst, a, Notion::EFM, 2), ArgumentError);
  CHECK_NOTHROW(check_at_level(inst, a, Notion::EFM, 6));
  CHECK_THROWS_AS(check_at_level(inst, a, Notion::EFM, 0), ArgumentError);
}

TEST_CASE("best fair welfare matches slow enumeration") {
  Gen gen(54);
  for (int t = 0; t < 250; ++t) {
    const std::size_t n = gen.between(1, 3);
    const std::size_t md = gen.below(3);
    const std::size_t level = md == 0 ? 1 : gen.between(1, n == 3 ? 2 : 3);
    const std::size_t m = gen.below(n == 3 ? 4 : 5);
    const Instance inst = gen.instance(n, m, md, gen.coin(), 4);
    for (Notion notion : kAllNotions) {
      for (bool partial : {false, true}) {
        CAPTURE(t);
        CAPTURE(to_string(notion));
        CAPTURE(partial);
        const SlowResult slow = slow_best(inst, notion, partial, level);
        const OracleConfig cfg = config(notion, partial, level);
        if (!slow.best) {
          CHECK_THROWS_AS(best_fair_welfare(inst, cfg), InfeasibleError);
          continue;
        }
        const FairOptimum fast = best_fair_welfare(inst, cfg);
        CHECK(fast.welfare == *slow.best);
        CHECK(fast.witness == slow.witness);
        CHECK(fast.level == level);
        CHECK(fast.discretized == (md > 0));
        CHECK(social_welfare(inst, fast.witness) == fast.welfare);
        CHECK(check_at_level(inst, fast.witness, notion, level));
        if (!partial) CHECK(is_complete(inst, fast.witness));

        std::set<std::string> visited;
        std::size_t visits = 0;
        for_each_fair_allocation(inst, cfg, [&](const Allocation& a, const Rational& sw) {
          ++visits;
          visited.insert(describe(a));
          CHECK(social_welfare(inst, a) == sw);
        });
        CHECK(visits == visited.size());
        CHECK(visited == slow.fair);
      }
    }
  }
}

TEST_CASE("wide utilities take the same answers") {
  // Denominators near 2^35 and 2^45 push the scaled sums past 64 and 128 bits.
  const std::vector<std::vector<std::string>> cases{
      {"34359738337", "68719476731"},
      {"35184372088777", "70368744177643", "140737488355213"},
  };
  for (const auto& dens : cases) {
    const Instance inst = big_denominators(dens);
    for (Notion notion : kAllNotions) {
      for (bool partial : {false, true}) {
        for (std::size_t level : {1, 2, 3}) {
          const SlowResult slow = slow_best(inst, notion, partial, level);
          const OracleConfig cfg = config(notion, partial, level);
          if (!slow.best) {
            CHECK_THROWS_AS(best_fair_welfare(inst, cfg), InfeasibleError);
            continue;
          }
          const FairOptimum fast = best_fair_welfare(inst, cfg);
          CHECK(fast.welfare == *slow.best);
          CHECK(fast.witness == slow.witness);
        }
      }
    }
  }
}

TEST_CASE("best fair welfare examples") {
  const Instance single({{R(1, 3), R(1, 2)}}, {{R(1, 6)}});
  for (Notion notion : kAllNotions) {
    CHECK(best_fair_welfare(single, config(notion, false, 2)).welfare == optimal_welfare(single));
    CHECK(best_fair_welfare(single, config(notion, true, 2)).welfare == optimal_welfare(single));
  }

  const Instance shared({{R(1)}, {R(1)}}, {{}, {}});
  const FairOptimum ef1 = best_fair_welfare(shared, config(Notion::EF1, false));
  CHECK(ef1.welfare == R(1));
  CHECK(ef1.witness[0].goods == std::vector<GoodId>{0});
  CHECK_THROWS_AS(best_fair_welfare(shared, config(Notion::EF, false)), InfeasibleError);
  CHECK(best_fair_welfare(shared, config(Notion::EF, true)).welfare == R(0));
  CHECK_THROWS_AS(price_of_fairness(shared, config(Notion::EF, true)), ContractError);
}

TEST_CASE("lower-bound instance: best EFM welfare is one at every level") {
  const Instance inst = thm34_lower_bound(R(1, 100));
  for (std::size_t level : {1, 2, 10, 50}) {
    const PriceReport r = price_of_fairness(inst, config(Notion::EFM, true, level));
    CAPTURE(level);
    CHECK(r.opt == R(74, 50));
    CHECK(r.best_fair == R(1));
    CHECK(r.ratio == R(74, 50));
    CHECK(r.level == level);
    CHECK(r.discretized);
    CHECK(check(inst, r.witness, Notion::EFM));
  }
  OracleConfig big = config(Notion::EFM, true, 100);
  CHECK_THROWS_AS(best_fair_welfare(inst, big), BudgetError);
  big.budget = 1e8;
  const PriceReport r = price_of_fairness(inst, big);
  CHECK(r.best_fair == R(1));
  CHECK(r.ratio == R(37, 25));
  CHECK(r.ratio.decimal() == "1.480000");
}

TEST_CASE("search limits") {
  const Instance inst({{R(1)}, {R(1)}}, {{R(1)}, {R(1)}});
  OracleConfig cfg = config(Notion::EF1, false, 20);
  cfg.max_pieces = 10;
  CHECK_THROWS_AS(best_fair_welfare(inst, cfg), BudgetError);
  cfg = config(Notion::EF1, false, 1);
  cfg.max_agents = 1;
  CHECK_THROWS_AS(best_fair_welfare(inst, cfg), BudgetError);
  cfg = config(Notion::EF1, false, 0);
  CHECK_THROWS_AS(best_fair_welfare(inst, cfg), ArgumentError);
}

TEST_CASE("price is one when an optimal allocation is envy-free") {
  const Instance inst({{R(2), R(0), R(1)}, {R(0), R(3), R(1)}}, {{R(1)}, {R(0)}});
  for (Notion notion : kAllNotions) {
    const PriceReport r = price_of_fairness(inst, config(notion, default_allow_partial(notion), 2));
    CHECK(r.ratio == R(1));
    CHECK(r.opt == optimal_welfare(inst));
  }
}

TEST_CASE("best fair welfare is monotone along the lattice and in partiality") {
  Gen gen(55);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = gen.between(2, 3);
    const bool indivisible_only = gen.coin();
    const Instance inst = gen.instance(n, gen.below(5), indivisible_only ? 0 : gen.between(1, 2), gen.coin(), 6);
    const std::size_t level = indivisible_only ? 1 : gen.between(1, 3);
    for (bool partial : {false, true}) {
      auto best = [&](Notion notion) -> std::optional<Rational> {
        try {
          return best_fair_welfare(inst, config(notion, partial, level)).welfare;
        } catch (const InfeasibleError&) {
          return std::nullopt;
        }
      };
      const auto ef = best(Notion::EF), efxm = best(Notion::EFXM), efm = best(Notion::EFM);
      const auto ef1 = best(Notion::EF1), efx = best(Notion::EFX);
      REQUIRE(ef1.has_value());
      REQUIRE(efm.has_value());
      if (ef) CHECK((efxm && *ef <= *efxm));
      if (efxm) CHECK(*efxm <= *efm);
      CHECK(*efm <= *ef1);
      if (indivisible_only) {
        CHECK(efm == ef1);
        CHECK(efxm == efx);
      }
      for (Notion notion : kAllNotions) {
        if (!partial) continue;
        std::optional<Rational> complete;
        try {
          complete = best_fair_welfare(inst, config(notion, false, level)).welfare;
        } catch (const InfeasibleError&) {
        }
        const auto part = best(notion);
        REQUIRE(part.has_value());
        if (complete) CHECK(*part >= *complete);
      }
    }
  }
}

TEST_CASE("the oracle certifies the two-agent algorithms") {
  Gen gen(56);
  for (int t = 0; t < 300; ++t) {
    const Instance inst = gen.instance(2, gen.between(1, 6), 0, true, 10);
    const Rational ef1_best = best_fair_welfare(inst, config(Notion::EF1, false)).welfare;
    const Allocation ef1 = ef1_two_agent_scaled(inst);
    CHECK(social_welfare(inst, ef1) <= ef1_best);
    CHECK(optimal_welfare(inst) * R(7) <= ef1_best * R(8));
    const Allocation cc = cut_and_choose(inst);
    CHECK(social_welfare(inst, cc) <= best_fair_welfare(inst, config(Notion::EFXM, true)).welfare);
  }
}

TEST_CASE("cut-and-choose never beats the oracle on its own grid") {
  Gen gen(57);
  int graded = 0;
  for (int t = 0; t < 400; ++t) {
    const Instance inst = gen.instance(2, gen.below(4), gen.between(1, 2), gen.coin(), 4);
    const Allocation cc = cut_and_choose(inst);
    mpz_class den = 1;
    for (const auto& b : cc.bundles) {
      for (const auto& f : b.fractions) den = lcm(den, f.denominator());
    }
    if (den > 8) continue;
    ++graded;
    const std::size_t level = den.get_ui();
    CHECK(check_at_level(inst, cc, Notion::EFXM, level));
    CHECK(social_welfare(inst, cc) <= best_fair_welfare(inst, config(Notion::EFXM, true, level)).welfare);
  }
  CHECK(graded > 100);
}

TEST_CASE("two unscaled agents lose at most half the optimum") {
  Gen gen(58);
  for (int t = 0; t < 200; ++t) {
    const bool indivisible_only = gen.coin();
    const Instance inst = gen.instance(2, gen.below(5), indivisible_only ? 0 : gen.between(1, 2), false, 6);
    const std::size_t level = indivisible_only ? 1 : gen.between(1, 4);
    const Rational opt = optimal_welfare(inst);
    std::vector<Notion> notions{Notion::EFM, Notion::EFXM};
    if (indivisible_only) notions.push_back(Notion::EFX);
    for (Notion notion : notions) {
      CHECK(opt <= R(2) * best_fair_welfare(inst, config(notion, true, level)).welfare);
    }
  }
}

TEST_CASE("two scaled agents with mixed goods lose at most a third under EFM") {
  Gen gen(59);
  for (int t = 0; t < 200; ++t) {
    const Instance inst = gen.instance(2, gen.below(4), gen.between(1, 2), true, 6);
    const std::size_t level = gen.between(1, 6);
    CHECK(optimal_welfare(inst) * R(2) <= R(3) * best_fair_welfare(inst, config(Notion::EFM, true, level)).welfare);
  }
}

TEST_CASE("worst-case search is deterministic and respects the known ceilings") {
  SearchConfig cfg;
  cfg.oracle = config(Notion::EF1, false);
  cfg.space = SearchSpace{2, 4, 0, true};
  cfg.trials = 300;
  cfg.seed = 7;
  const SearchResult a = search_worst_case(cfg);
  const SearchResult b = search_worst_case(cfg);
  CHECK(a.instance == b.instance);
  CHECK(a.report.ratio == b.report.ratio);
  CHECK(a.evaluated == b.evaluated);
  CHECK(a.report.ratio >= R(1));
  CHECK(a.report.ratio <= R(8, 7));
  CHECK(a.report.ratio == price_of_fairness(a.instance, cfg.oracle).ratio);
  CHECK(a.instance.is_scaled());

  SearchConfig unscaled;
  unscaled.oracle = config(Notion::EFXM, true, 2);
  unscaled.space = SearchSpace{2, 3, 1, false};
  unscaled.trials = 200;
  unscaled.seed = 3;
  const SearchResult u = search_worst_case(unscaled);
  CHECK(u.report.ratio <= R(2));
  CHECK(u.instance.divisible_count() == 1);
  CHECK(u.instance.indivisible_count() >= 1);
  CHECK(u.instance.indivisible_count() <= 3);
}

TEST_CASE("worst-case search from a starting point never reports less than the start") {
  SearchConfig cfg;
  cfg.oracle = config(Notion::EFM, true, 4);
  cfg.space = SearchSpace{2, 1, 2, true};
  cfg.trials = 100;
  cfg.seed = 11;
  cfg.start = thm34_lower_bound(R(1, 10));
  const Rational start = price_of_fairness(*cfg.start, cfg.oracle).ratio;
  const SearchResult r = search_worst_case(cfg);
  CHECK(r.report.ratio >= start);
  CHECK(r.report.ratio <= R(3, 2));
}
