#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fairdiv {

// Matrix shapes, agent or good indices that do not fit the instance.
class DimensionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A documented precondition of an operation does not hold
// (unscaled input to a scaled-only procedure, infeasible allocation, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Operation restricted to a fixed number of agents.
class ArityError : public ContractError {
 public:
  using ContractError::ContractError;
};

class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ScalingError : public std::domain_error {
 public:
  ScalingError(std::size_t agent, const std::string& what)
      : std::domain_error(what), agent_(agent) {}
  std::size_t agent() const noexcept { return agent_; }

 private:
  std::size_t agent_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::string field, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) +
                           (field.empty() ? "" : " (" + field + ")") + ": " +
                           message),
        line_(line),
        field_(std::move(field)) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

// Brute-force enumeration would exceed the configured allocation budget.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(double required, double budget, const std::string& what)
      : std::runtime_error(what), required_(required), budget_(budget) {}
  double required() const noexcept { return required_; }
  double budget() const noexcept { return budget_; }

 private:
  double required_;
  double budget_;
};

// No allocation in the search space satisfies the requested notion.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fairdiv
