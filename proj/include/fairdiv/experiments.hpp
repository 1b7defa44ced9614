#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fairdiv/oracle.hpp"

namespace fairdiv {

struct ExperimentOptions {
  std::uint64_t seed = 20240601;
  double budget = kDefaultBudget;
  // Budget for the single large discretized run of the 3/2 experiment.
  double large_budget = 1e8;
};

struct ExperimentReport {
  int criterion = 0;
  std::string title;
  std::string bound;     // what is being checked
  std::string observed;  // headline measurement
  bool passed = false;
  std::vector<std::string> evidence;
  double seconds = 0;
};

inline constexpr int kCriterionCount = 9;

// Runs acceptance experiment 1..9. Any exception inside an experiment is
// reported as a failure with its message as evidence.
ExperimentReport run_criterion(int id, const ExperimentOptions& opts = {});

// Names accepted by `reproduce --bound`: ef1-87, efm-32, unscaled-2,
// efxm-abs, po-table3. Throws ArgumentError on anything else.
std::vector<int> criteria_for_bound(std::string_view bound);
std::vector<std::string_view> bound_names();

}  // namespace fairdiv
