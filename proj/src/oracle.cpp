#include "fairdiv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "fairdiv/algorithms.hpp"
#include "fairdiv/error.hpp"
#include "fairdiv/instances.hpp"

namespace fairdiv {

namespace {

__extension__ typedef __int128 int128;

double binomial(std::size_t n, std::size_t k) {
  double r = 1;
  for (std::size_t t = 1; t <= k; ++t) r = r * static_cast<double>(n - k + t) / static_cast<double>(t);
  return r;
}

void require_budget(double required, double budget) {
  if (required > budget) {
    std::ostringstream msg;
    msg << "search space of " << required << " allocations exceeds the budget of " << budget;
    throw BudgetError(required, budget, msg.str());
  }
}

void require_caps(const Instance& inst, const OracleConfig& cfg) {
  if (cfg.level == 0) throw ArgumentError("discretization level must be positive");
  if (inst.agents() > cfg.max_agents) {
    throw BudgetError(static_cast<double>(inst.agents()), static_cast<double>(cfg.max_agents),
                      "too many agents for exhaustive search");
  }
  if (inst.indivisible_count() > cfg.max_indivisible) {
    throw BudgetError(static_cast<double>(inst.indivisible_count()),
                      static_cast<double>(cfg.max_indivisible),
                      "too many indivisible goods for exhaustive search");
  }
  const double pieces = static_cast<double>(inst.divisible_count()) * static_cast<double>(cfg.level);
  if (pieces > static_cast<double>(cfg.max_pieces)) {
    throw BudgetError(pieces, static_cast<double>(cfg.max_pieces), "too many pieces for exhaustive search");
  }
  require_budget(allocation_classes(inst, cfg), cfg.budget);
}

// Pass/fail of one ordered pair given the removal candidates of the envied
// bundle. Values are in any common unit.
template <class T>
struct PairView {
  bool has_real = false;
  T real_max{}, real_min{};
  bool has_piece = false;
  T piece_max{}, piece_min{};
};

template <class T>
bool pair_passes(Notion notion, const T& own, const T& other, const PairView<T>& v) {
  if (!(own < other)) return true;
  switch (notion) {
    case Notion::EF:
      return false;
    case Notion::EF1: {
      if (!v.has_real && !v.has_piece) return false;
      T best = v.has_real ? v.real_max : v.piece_max;
      if (v.has_piece && v.has_real && best < v.piece_max) best = v.piece_max;
      return !(own < other - best);
    }
    case Notion::EFX: {
      if (!v.has_real && !v.has_piece) return false;
      T least = v.has_real ? v.real_min : v.piece_min;
      if (v.has_piece && v.has_real && v.piece_min < least) least = v.piece_min;
      return !(own < other - least);
    }
    case Notion::EFM:
      if (v.has_piece) return !(own < other - v.piece_max);
      return v.has_real && !(own < other - v.real_max);
    case Notion::EFXM:
      if (v.has_piece) return !(own < other - v.piece_min);
      return v.has_real && !(own < other - v.real_min);
  }
  return false;
}

template <class T>
void extend(PairView<T>& v, bool piece, const T& value) {
  if (piece) {
    if (!v.has_piece) {
      v.has_piece = true;
      v.piece_max = v.piece_min = value;
    } else {
      if (v.piece_max < value) v.piece_max = value;
      if (value < v.piece_min) v.piece_min = value;
    }
  } else {
    if (!v.has_real) {
      v.has_real = true;
      v.real_max = v.real_min = value;
    } else {
      if (v.real_max < value) v.real_max = value;
      if (value < v.real_min) v.real_min = value;
    }
  }
}

// Exhaustive search over allocation classes. Real goods carry values scaled
// by `level`, so one piece of d_k is worth exactly the scaled u_i(d_k).
template <class T>
class Kernel {
 public:
  using LeafFn = std::function<void(const std::vector<std::size_t>&, const std::vector<std::size_t>&, const T&)>;

  Kernel(std::size_t n, std::size_t m, std::size_t md, std::size_t level, bool partial, Notion notion,
         std::vector<T> real, std::vector<T> piece)
      : n_(n), m_(m), md_(md), level_(level), slots_(n + (partial ? 1 : 0)), notion_(notion),
        real_(std::move(real)), piece_(std::move(piece)), owner_(m, 0), counts_(md * slots_, 0),
        u_(n * n, T{}), real_rest_(m + 1, T{}), div_rest_(md + 1, T{}), piece_best_(md, T{}) {
    for (std::size_t g = m; g-- > 0;) {
      T best = real_[g];
      for (std::size_t i = 1; i < n; ++i) best = std::max(best, real_[i * m + g]);
      real_rest_[g] = real_rest_[g + 1] + best;
    }
    for (std::size_t k = md; k-- > 0;) {
      T best = piece_[k];
      for (std::size_t i = 1; i < n; ++i) best = std::max(best, piece_[i * md + k]);
      piece_best_[k] = best;
      div_rest_[k] = div_rest_[k + 1] + best * T(static_cast<long>(level_));
    }
  }

  // Best mode: the first class of maximum welfare passing the notion.
  bool run_best() {
    prune_ = true;
    real_step(0);
    return found_;
  }

  void run_all(LeafFn fn) {
    prune_ = false;
    leaf_fn_ = std::move(fn);
    real_step(0);
  }

  const T& best() const { return best_; }
  const std::vector<std::size_t>& best_owner() const { return best_owner_; }
  const std::vector<std::size_t>& best_counts() const { return best_counts_; }
  std::size_t slots() const { return slots_; }

 private:
  bool hopeless(const T& bound) const { return prune_ && found_ && !(best_ < bound); }

  void real_step(std::size_t g) {
    if (g == m_) {
      div_step(0, 0, level_);
      return;
    }
    for (std::size_t o = 0; o < slots_; ++o) {
      owner_[g] = o;
      if (o < n_) {
        for (std::size_t i = 0; i < n_; ++i) u_[i * n_ + o] += real_[i * m_ + g];
        sw_ += real_[o * m_ + g];
      }
      if (!hopeless(sw_ + real_rest_[g + 1] + div_rest_[0])) real_step(g + 1);
      if (o < n_) {
        for (std::size_t i = 0; i < n_; ++i) u_[i * n_ + o] -= real_[i * m_ + g];
        sw_ -= real_[o * m_ + g];
      }
    }
  }

  void give_pieces(std::size_t k, std::size_t slot, std::size_t c, bool add) {
    if (slot >= n_ || c == 0) return;
    const T count = T(static_cast<long>(c));
    for (std::size_t i = 0; i < n_; ++i) {
      const T v = piece_[i * md_ + k] * count;
      if (add) {
        u_[i * n_ + slot] += v;
      } else {
        u_[i * n_ + slot] -= v;
      }
    }
    const T own = piece_[slot * md_ + k] * count;
    if (add) {
      sw_ += own;
    } else {
      sw_ -= own;
    }
  }

  void div_step(std::size_t k, std::size_t slot, std::size_t remaining) {
    if (k == md_) {
      leaf();
      return;
    }
    if (slot + 1 == slots_) {
      counts_[k * slots_ + slot] = remaining;
      give_pieces(k, slot, remaining, true);
      if (!hopeless(sw_ + div_rest_[k + 1])) div_step(k + 1, 0, level_);
      give_pieces(k, slot, remaining, false);
      counts_[k * slots_ + slot] = 0;
      return;
    }
    for (std::size_t c = remaining + 1; c-- > 0;) {
      counts_[k * slots_ + slot] = c;
      give_pieces(k, slot, c, true);
      const T bound = sw_ + piece_best_[k] * T(static_cast<long>(remaining - c)) + div_rest_[k + 1];
      if (!hopeless(bound)) div_step(k, slot + 1, remaining - c);
      give_pieces(k, slot, c, false);
    }
    counts_[k * slots_ + slot] = 0;
  }

  bool fair() const {
    for (std::size_t i = 0; i < n_; ++i) {
      const T& own = u_[i * n_ + i];
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j || !(own < u_[i * n_ + j])) continue;
        PairView<T> view;
        for (std::size_t g = 0; g < m_; ++g) {
          if (owner_[g] == j) extend(view, false, real_[i * m_ + g]);
        }
        for (std::size_t k = 0; k < md_; ++k) {
          if (counts_[k * slots_ + j] > 0) extend(view, true, piece_[i * md_ + k]);
        }
        if (!pair_passes(notion_, own, u_[i * n_ + j], view)) return false;
      }
    }
    return true;
  }

  void leaf() {
    if (prune_ && found_ && !(best_ < sw_)) return;
    if (!fair()) return;
    if (!prune_) {
      leaf_fn_(owner_, counts_, sw_);
      return;
    }
    found_ = true;
    best_ = sw_;
    best_owner_ = owner_;
    best_counts_ = counts_;
  }

  std::size_t n_, m_, md_, level_, slots_;
  Notion notion_;
  std::vector<T> real_, piece_;
  std::vector<std::size_t> owner_, counts_;
  std::vector<T> u_;
  std::vector<T> real_rest_, div_rest_, piece_best_;
  T sw_{};
  bool prune_ = true;
  bool found_ = false;
  T best_{};
  std::vector<std::size_t> best_owner_, best_counts_;
  LeafFn leaf_fn_;
};

Allocation class_to_allocation(const Instance& inst, std::size_t level, std::size_t slots,
                               const std::vector<std::size_t>& owner,
                               const std::vector<std::size_t>& counts) {
  Allocation a = Allocation::empty(inst);
  for (GoodId g = 0; g < owner.size(); ++g) {
    if (owner[g] < inst.agents()) a[owner[g]].goods.push_back(g);
  }
  for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
    for (AgentId i = 0; i < inst.agents(); ++i) {
      a[i].fractions[k] = Rational(static_cast<long>(counts[k * slots + i]), static_cast<long>(level));
    }
  }
  return a;
}

mpz_class lcm_of_denominators(const Instance& inst) {
  mpz_class l = 1;
  for (AgentId i = 0; i < inst.agents(); ++i) {
    for (GoodId g = 0; g < inst.indivisible_count(); ++g) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inst.indiv(i, g).raw().get_den_mpz_t());
    }
    for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), inst.div(i, k).raw().get_den_mpz_t());
    }
  }
  return l;
}

template <class T>
T convert(const mpz_class& z);

template <>
std::int64_t convert<std::int64_t>(const mpz_class& z) {
  return z.get_si();
}

template <>
int128 convert<int128>(const mpz_class& z) {
  const mpz_class high = z >> 64;
  const mpz_class low = z - (high << 64);
  return (static_cast<int128>(high.get_si()) << 64) | static_cast<int128>(low.get_ui());
}

template <>
Rational convert<Rational>(const mpz_class& z) {
  return Rational(mpq_class(z));
}

// Values u * L * level for real goods and u * L for pieces, L the common
// denominator, so every sum the kernel forms is an exact integer.
template <class T>
Kernel<T> make_kernel(const Instance& inst, const OracleConfig& cfg, const mpz_class& lcm) {
  const std::size_t n = inst.agents(), m = inst.indivisible_count(), md = inst.divisible_count();
  std::vector<T> real(n * m), piece(n * md);
  const mpq_class scale_real = mpq_class(lcm * static_cast<unsigned long>(cfg.level));
  const mpq_class scale_piece = mpq_class(lcm);
  for (AgentId i = 0; i < n; ++i) {
    for (GoodId g = 0; g < m; ++g) {
      const mpq_class v = inst.indiv(i, g).raw() * scale_real;
      real[i * m + g] = convert<T>(v.get_num());
    }
    for (std::size_t k = 0; k < md; ++k) {
      const mpq_class v = inst.div(i, k).raw() * scale_piece;
      piece[i * md + k] = convert<T>(v.get_num());
    }
  }
  return Kernel<T>(n, m, md, cfg.level, cfg.allow_partial, cfg.notion, std::move(real), std::move(piece));
}

template <class T>
Rational to_rational(const T& v);

template <>
Rational to_rational<std::int64_t>(const std::int64_t& v) {
  return Rational(mpq_class(mpz_class(static_cast<long>(v))));
}

template <>
Rational to_rational<int128>(const int128& v) {
  const std::int64_t high = static_cast<std::int64_t>(v >> 64);
  const std::uint64_t low = static_cast<std::uint64_t>(v);
  mpz_class z = mpz_class(static_cast<long>(high));
  z <<= 64;
  z += mpz_class(static_cast<unsigned long>(low));
  return Rational(mpq_class(z));
}

template <>
Rational to_rational<Rational>(const Rational& v) {
  return v;
}

enum class Width { I64, I128, Big };

// Welfare sums stay below sum_i u_i(M u D) * L * level; each matrix entry of
// the kernel is a partial sum of one agent's row.
Width choose_width(const Instance& inst, const OracleConfig& cfg, const mpz_class& lcm) {
  const mpq_class bound = total_utility_sum(inst).raw() * mpq_class(lcm * static_cast<unsigned long>(cfg.level));
  const mpz_class ceiling = bound.get_num() / bound.get_den() + 1;
  const std::size_t bits = mpz_sizeinbase(ceiling.get_mpz_t(), 2);
  if (bits <= 61) return Width::I64;
  if (bits <= 125) return Width::I128;
  return Width::Big;
}

template <class T>
FairOptimum best_with(const Instance& inst, const OracleConfig& cfg, const mpz_class& lcm) {
  Kernel<T> kernel = make_kernel<T>(inst, cfg, lcm);
  if (!kernel.run_best()) {
    throw InfeasibleError(std::string("no allocation satisfies ") + std::string(to_string(cfg.notion)));
  }
  FairOptimum out;
  const mpq_class unit = mpq_class(lcm * static_cast<unsigned long>(cfg.level));
  out.welfare = Rational(to_rational<T>(kernel.best()).raw() / unit);
  out.witness = class_to_allocation(inst, cfg.level, kernel.slots(), kernel.best_owner(), kernel.best_counts());
  out.level = cfg.level;
  out.discretized = inst.divisible_count() > 0;
  out.classes = allocation_classes(inst, cfg);
  return out;
}

template <class T>
void all_with(const Instance& inst, const OracleConfig& cfg, const mpz_class& lcm,
              const std::function<void(const Allocation&, const Rational&)>& visit) {
  Kernel<T> kernel = make_kernel<T>(inst, cfg, lcm);
  const mpq_class unit = mpq_class(lcm * static_cast<unsigned long>(cfg.level));
  const std::size_t slots = kernel.slots();
  kernel.run_all([&](const std::vector<std::size_t>& owner, const std::vector<std::size_t>& counts, const T& sw) {
    visit(class_to_allocation(inst, cfg.level, slots, owner, counts), Rational(to_rational<T>(sw).raw() / unit));
  });
}

}  // namespace

bool default_allow_partial(Notion notion) {
  return notion == Notion::EFX || notion == Notion::EFM || notion == Notion::EFXM;
}

OracleConfig default_config(Notion notion, std::size_t level) {
  OracleConfig cfg;
  cfg.notion = notion;
  cfg.allow_partial = default_allow_partial(notion);
  cfg.level = level;
  return cfg;
}

double allocation_classes(const Instance& inst, const OracleConfig& cfg) {
  const std::size_t slots = inst.agents() + (cfg.allow_partial ? 1 : 0);
  const double per_divisible = binomial(cfg.level + slots - 1, slots - 1);
  return std::pow(static_cast<double>(slots), static_cast<double>(inst.indivisible_count())) *
         std::pow(per_divisible, static_cast<double>(inst.divisible_count()));
}

double allocation_count(const Instance& inst, bool allow_partial) {
  const std::size_t slots = inst.agents() + (allow_partial ? 1 : 0);
  return std::pow(static_cast<double>(slots), static_cast<double>(inst.indivisible_count()));
}

void enumerate_allocations(const Instance& inst, bool allow_partial,
                           const std::function<void(const Allocation&)>& visit, double budget) {
  if (inst.divisible_count() != 0) throw ContractError("enumeration needs an instance without divisible goods");
  require_budget(allocation_count(inst, allow_partial), budget);
  const std::size_t n = inst.agents(), m = inst.indivisible_count();
  const std::size_t slots = n + (allow_partial ? 1 : 0);
  std::vector<std::size_t> owner(m, 0);
  for (;;) {
    Allocation a = Allocation::empty(inst);
    for (GoodId g = 0; g < m; ++g) {
      if (owner[g] < n) a[owner[g]].goods.push_back(g);
    }
    visit(a);
    std::size_t pos = m;
    while (pos > 0 && owner[pos - 1] + 1 == slots) owner[--pos] = 0;
    if (pos == 0) return;
    ++owner[pos - 1];
  }
}

bool check_at_level(const Instance& inst, const Allocation& a, Notion notion, std::size_t level) {
  if (level == 0) throw ArgumentError("discretization level must be positive");
  validate_shape(inst, a);
  const Rational lv(static_cast<long>(level));
  for (const auto& b : a.bundles) {
    for (const auto& f : b.fractions) {
      if (!(f * lv).is_integer()) throw ArgumentError("fraction " + f.str() + " is not a multiple of 1/level");
    }
  }
  const std::size_t n = inst.agents();
  for (AgentId i = 0; i < n; ++i) {
    const Rational own = utility(inst, i, a[i]);
    for (AgentId j = 0; j < n; ++j) {
      if (i == j) continue;
      const Rational other = utility(inst, i, a[j]);
      if (!(own < other)) continue;
      PairView<Rational> view;
      for (GoodId g : a[j].goods) extend(view, false, inst.indiv(i, g));
      for (std::size_t k = 0; k < inst.divisible_count(); ++k) {
        if (a[j].fractions[k].sign() > 0) extend(view, true, inst.div(i, k) / lv);
      }
      if (!pair_passes(notion, own, other, view)) return false;
    }
  }
  return true;
}

FairOptimum best_fair_welfare(const Instance& inst, const OracleConfig& cfg) {
  require_caps(inst, cfg);
  const mpz_class lcm = lcm_of_denominators(inst);
  switch (choose_width(inst, cfg, lcm)) {
    case Width::I64:
      return best_with<std::int64_t>(inst, cfg, lcm);
    case Width::I128:
      return best_with<int128>(inst, cfg, lcm);
    case Width::Big:
      break;
  }
  return best_with<Rational>(inst, cfg, mpz_class(1));
}

void for_each_fair_allocation(const Instance& inst, const OracleConfig& cfg,
                              const std::function<void(const Allocation&, const Rational&)>& visit) {
  require_caps(inst, cfg);
  const mpz_class lcm = lcm_of_denominators(inst);
  switch (choose_width(inst, cfg, lcm)) {
    case Width::I64:
      return all_with<std::int64_t>(inst, cfg, lcm, visit);
    case Width::I128:
      return all_with<int128>(inst, cfg, lcm, visit);
    case Width::Big:
      break;
  }
  all_with<Rational>(inst, cfg, mpz_class(1), visit);
}

PriceReport price_of_fairness(const Instance& inst, const OracleConfig& cfg) {
  FairOptimum best = best_fair_welfare(inst, cfg);
  if (best.welfare.is_zero()) throw ContractError("best fair welfare is zero, the price is undefined");
  PriceReport r;
  r.opt = optimal_welfare(inst);
  r.best_fair = best.welfare;
  r.ratio = r.opt / r.best_fair;
  r.witness = std::move(best.witness);
  r.level = best.level;
  r.discretized = best.discretized;
  return r;
}

namespace {

Rational random_value(std::mt19937_64& rng) {
  const long q = static_cast<long>(rng() % 60) + 1;
  const long p = static_cast<long>(rng() % static_cast<std::uint64_t>(q + 1));
  return Rational(p, q);
}

Instance perturb(const Instance& base, bool scaled, std::mt19937_64& rng) {
  const std::size_t n = base.agents(), m = base.indivisible_count(), md = base.divisible_count();
  for (;;) {
    UtilityMatrix indiv = base.indivisible_utilities();
    UtilityMatrix div = base.divisible_utilities();
    const std::size_t changes = 1 + rng() % 2;
    for (std::size_t c = 0; c < changes; ++c) {
      const AgentId i = rng() % n;
      const std::size_t col = rng() % (m + md);
      Rational& slot = col < m ? indiv(i, col) : div(i, col - m);
      if (rng() % 2 == 0) {
        slot = random_value(rng);
      } else {
        // Nudge towards a nearby fraction.
        const Rational step(1, static_cast<long>(rng() % 60) + 1);
        const Rational moved = rng() % 2 == 0 ? slot + step * Rational(1, 4) : slot - step * Rational(1, 4);
        slot = moved.sign() < 0 ? Rational(0) : moved;
      }
    }
    Instance candidate(std::move(indiv), std::move(div));
    if (!scaled) return candidate;
    bool positive = true;
    for (AgentId i = 0; i < n; ++i) positive = positive && candidate.total(i).sign() > 0;
    if (positive) return scale(candidate);
  }
}

}  // namespace

SearchResult search_worst_case(const SearchConfig& cfg) {
  if (cfg.space.agents == 0 || cfg.space.max_indivisible + cfg.space.divisible == 0) {
    throw ArgumentError("search space needs at least one agent and one good");
  }
  std::mt19937_64 rng(cfg.seed);
  std::optional<SearchResult> best;
  std::optional<Instance> current;
  std::optional<Rational> current_ratio;

  auto fresh = [&]() -> Instance {
    const std::size_t m = cfg.space.max_indivisible == 0 ? 0 : 1 + rng() % cfg.space.max_indivisible;
    for (;;) {
      try {
        return random_instance(cfg.space.agents, m, cfg.space.divisible, cfg.space.scaled, rng());
      } catch (const ArgumentError&) {
      }
    }
  };

  auto evaluate = [&](const Instance& inst) -> std::optional<PriceReport> {
    try {
      return price_of_fairness(inst, cfg.oracle);
    } catch (const InfeasibleError&) {
      return std::nullopt;
    } catch (const ContractError&) {
      return std::nullopt;
    }
  };

  constexpr std::size_t kPlateau = 150;
  std::size_t evaluated = 0;
  std::size_t stale = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    const bool seeded = t == 0 && cfg.start.has_value();
    const bool restart = !seeded && (!current || stale >= kPlateau || rng() % 8 == 0);
    Instance candidate = seeded ? *cfg.start : (restart ? fresh() : perturb(*current, cfg.space.scaled, rng));
    ++evaluated;
    const std::optional<PriceReport> report = evaluate(candidate);
    if (!report) {
      ++stale;
      continue;
    }
    if (!best || report->ratio > best->report.ratio) best = SearchResult{candidate, *report, 0};
    if (!current || (restart && stale >= kPlateau)) {
      current = std::move(candidate);
      current_ratio = report->ratio;
      stale = 0;
    } else if (report->ratio >= *current_ratio) {
      stale = report->ratio > *current_ratio ? 0 : stale + 1;
      current = std::move(candidate);
      current_ratio = report->ratio;
    } else {
      ++stale;
    }
  }
  if (!best) throw InfeasibleError("no sampled instance admitted a fair allocation with positive welfare");
  best->evaluated = evaluated;
  return *best;
}

}  // namespace fairdiv
