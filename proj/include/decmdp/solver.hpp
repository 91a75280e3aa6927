#pragma once

#include "decmdp/evaluation.hpp"
#include "decmdp/model.hpp"
#include "decmdp/policy.hpp"

#include <optional>

namespace decmdp {

struct SolveOptions {
  BigInt budget = BigInt(10000000);  // maximum policy evaluations
  bool early_exit = false;           // stop at the first value >= threshold
  std::optional<Rational> threshold; // required when early_exit is set
  int threads = 1;
};

struct SolveResult {
  Rational optimal_value;
  JointPolicy argmax_policy;  // lexicographically first maximizer
  BigInt policies_examined;
};

// Exhaustive maximization of exact_value over the joint policy space.
// Throws BudgetExceeded when the policy count exceeds options.budget.
SolveResult solve_decpomdp_exact(const DecPomdp& model,
                                 const SolveOptions& options = {});

// YES iff some joint policy reaches instance.threshold. Enforces the
// T < |S| restriction unless allow_long_horizon is set.
bool decide(const DecisionInstance& instance, const SolveOptions& options = {});

struct MdpSolveResult {
  Rational optimal_value;
  // action_by_time_state[t][s] = greedy action at epoch t in state s
  // (lexicographic tie-break). Epoch 0 draws from the initial action set.
  std::vector<std::vector<int>> action_by_time_state;
};

// Backward induction: V_T = 0, V_t(s) = max_a [R(s,a) + sum P(s'|s,a) V_{t+1}(s')].
MdpSolveResult solve_mdp_dp(const Mdp& model);

// The m=1 specialization: enumerates the single agent's local policies.
SolveResult solve_pomdp_exact(const Pomdp& model,
                              const SolveOptions& options = {});

}  // namespace decmdp
