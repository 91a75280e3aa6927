#pragma once

#include "decmdp/model.hpp"
#include "decmdp/policy.hpp"

#include <map>
#include <vector>

namespace decmdp {

struct ValueResult {
  Rational expected_total_reward;
  std::vector<Rational> per_epoch_rewards;  // length T
};

// Exact expected total reward of `policy` over the model's horizon, by
// forward propagation of (state, joint-history) nodes with rational
// probabilities. Zero-probability branches are pruned.
ValueResult exact_value(const DecPomdp& model, const JointPolicy& policy);

// Conditional distribution over states after observing the given joint
// observation sequence under (model, policy). Throws ConditioningError on
// a zero-probability sequence.
std::map<int, Rational> belief_states(
    const DecPomdp& model, const JointPolicy& policy,
    const std::vector<JointObservation>& sequence);

struct SampleEstimate {
  double mean = 0;
  double variance = 0;  // sample variance (n-1 denominator)
  long episodes = 0;

  double stderr_mean() const;
};

// Seeded Monte Carlo cross-check of exact_value. Identical seed gives
// identical output.
SampleEstimate simulate(const DecPomdp& model, const JointPolicy& policy,
                        long episodes, unsigned long long seed);

}  // namespace decmdp
