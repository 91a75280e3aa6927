#pragma once

#include "decmdp/rational.hpp"

#include <stdexcept>
#include <string>

namespace decmdp {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Wrong number of agents for an operation (e.g. as_single_agent on m=2).
struct ArityError : InputError {
  using InputError::InputError;
};

// T >= |S| without the explicit override.
struct PreconditionError : InputError {
  using InputError::InputError;
};

// File or field failed to parse; names the offending location.
struct ParseError : InputError {
  using InputError::InputError;
};

// Enumeration or search space exceeds the configured budget.
struct BudgetExceeded : std::runtime_error {
  BigInt count;
  explicit BudgetExceeded(BigInt n)
      : std::runtime_error("budget exceeded: " + n.str() + " candidates"),
        count(std::move(n)) {}
};

// A policy has no decision for a reachable history.
struct UndefinedDecisionError : std::runtime_error {
  int agent;
  std::vector<int> history;
  UndefinedDecisionError(int agent_, std::vector<int> history_,
                         const std::string& detail)
      : std::runtime_error(detail), agent(agent_), history(std::move(history_)) {}
};

// Conditioning on a zero-probability observation sequence.
struct ConditioningError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace decmdp
