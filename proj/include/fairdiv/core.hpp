#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fairdiv/rational.hpp"

namespace fairdiv {

using AgentId = std::size_t;
using GoodId = std::size_t;

// Row-major agents x goods matrix of non-negative exact utilities.
class UtilityMatrix {
 public:
  UtilityMatrix() = default;
  UtilityMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  // Every inner vector must have the same length.
  static UtilityMatrix from_rows(const std::vector<std::vector<Rational>>& rows,
                                 std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  friend bool operator==(const UtilityMatrix&, const UtilityMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

// n agents with additive utilities over m indivisible goods and
// m-bar homogeneous divisible goods.
class Instance {
 public:
  // Throws DimensionError on shape mismatch or n == 0, ArgumentError on a
  // negative entry.
  Instance(UtilityMatrix indivisible, UtilityMatrix divisible);
  Instance(const std::vector<std::vector<Rational>>& indivisible,
           const std::vector<std::vector<Rational>>& divisible);

  std::size_t agents() const { return indiv_.rows(); }
  std::size_t indivisible_count() const { return indiv_.cols(); }
  std::size_t divisible_count() const { return div_.cols(); }

  const Rational& indiv(AgentId i, GoodId g) const { return indiv_(i, g); }
  const Rational& div(AgentId i, GoodId k) const { return div_(i, k); }
  const UtilityMatrix& indivisible_utilities() const { return indiv_; }
  const UtilityMatrix& divisible_utilities() const { return div_; }

  // u_i(M u D).
  const Rational& total(AgentId i) const { return totals_.at(i); }
  bool is_scaled() const { return scaled_; }

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.indiv_ == b.indiv_ && a.div_ == b.div_;
  }

 private:
  UtilityMatrix indiv_;
  UtilityMatrix div_;
  std::vector<Rational> totals_;
  bool scaled_ = false;
};

// A set of indivisible goods plus a fraction of every divisible good.
struct Bundle {
  std::vector<GoodId> goods;       // sorted, distinct
  std::vector<Rational> fractions;  // one entry per divisible good, each in [0, 1]

  static Bundle empty(const Instance& inst) {
    return Bundle{{}, std::vector<Rational>(inst.divisible_count())};
  }
  bool contains(GoodId g) const;
  void add(GoodId g);     // keeps goods sorted; no-op if present
  void remove(GoodId g);  // no-op if absent
  // x != 0: some coordinate strictly positive.
  bool holds_divisible() const;
  bool is_empty() const { return goods.empty() && !holds_divisible(); }

  friend bool operator==(const Bundle&, const Bundle&) = default;
};

struct Allocation {
  std::vector<Bundle> bundles;

  static Allocation empty(const Instance& inst);
  std::size_t size() const { return bundles.size(); }
  Bundle& operator[](AgentId i) { return bundles[i]; }
  const Bundle& operator[](AgentId i) const { return bundles[i]; }
  // Indivisible goods held by no agent, ascending.
  std::vector<GoodId> unallocated_goods(const Instance& inst) const;

  friend bool operator==(const Allocation&, const Allocation&) = default;
};

// "{g1, g3; d1 1/2}" with 1-based labels; zero fractions omitted.
std::string describe(const Bundle& b);
// "(A_1 | A_2 | ...)".
std::string describe(const Allocation& a);

// Throws DimensionError if the bundle does not fit the instance.
void validate_bundle(const Instance& inst, const Bundle& b);
// Shape checks only: n bundles, each well formed.
void validate_shape(const Instance& inst, const Allocation& a);

Rational utility(const Instance& inst, AgentId agent, const Bundle& b);
Rational utility_of_goods(const Instance& inst, AgentId agent, std::span<const GoodId> goods);

bool is_feasible(const Instance& inst, const Allocation& a);
bool is_complete(const Instance& inst, const Allocation& a);

// Throws ContractError unless a is feasible.
Rational social_welfare(const Instance& inst, const Allocation& a);
// Item-wise maximum: every good to an agent valuing it most.
Rational optimal_welfare(const Instance& inst);
// The item-wise optimal allocation, ties to the lowest agent index.
Allocation optimal_allocation(const Instance& inst);
// Sum over agents of u_i(M u D): an upper bound on optimal welfare.
Rational total_utility_sum(const Instance& inst);

// Divides each row by its total. Throws ScalingError naming the first agent
// whose total utility is zero.
Instance scale(const Instance& inst);

// Sum over goods of u_1(g) - u_2(g). Throws ArityError unless n == 2.
Rational surplus(const Instance& inst, std::span<const GoodId> goods);
// {g : u_1(g) >= u_2(g)}, ties included. Throws ArityError unless n == 2.
std::vector<GoodId> agent1_favoured_goods(const Instance& inst);

}  // namespace fairdiv
