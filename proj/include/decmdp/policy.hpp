#pragma once

#include "decmdp/model.hpp"

#include <map>
#include <vector>

namespace decmdp {

// A local observation history: sequence of the agent's observation ids,
// oldest first. The empty history is the first decision epoch.
using ObservationHistory = std::vector<int>;

struct LocalPolicy {
  int agent = 0;
  std::map<ObservationHistory, int> decisions;

  int action_for(const ObservationHistory& history) const;  // throws UndefinedDecisionError
};

struct JointPolicy {
  std::vector<LocalPolicy> locals;
};

// One reachable decision point: the history an agent may hold at some
// epoch t < T and the actions it may legally pick there.
struct DecisionPoint {
  ObservationHistory history;
  std::vector<int> actions;
};

// Per-agent decision points, lexicographically ordered (prefixes first).
// Computed once per model by forward closure over the joint support.
struct ReachableDecisionPoints {
  std::vector<std::vector<DecisionPoint>> per_agent;
};

ReachableDecisionPoints reachable_decision_points(const DecPomdp& model);

// Histories of length < T occurring with nonzero probability under some
// assignment of available actions.
std::vector<ObservationHistory> reachable_histories(const DecPomdp& model,
                                                    int agent);

BigInt count_local_policies(const DecPomdp& model, int agent);
BigInt count_local_policies(const ReachableDecisionPoints& points, int agent);

// Exhaustive, duplicate-free, lexicographic stream over the product of
// the local policy spaces. Policies are addressed by index so workers
// can consume disjoint slices.
class JointPolicyEnumerator {
 public:
  explicit JointPolicyEnumerator(const DecPomdp& model);

  const BigInt& total() const { return total_; }
  const ReachableDecisionPoints& points() const { return points_; }

  // index in [0, total()). Index 0 picks the first declared action at
  // every decision point; the last decision point varies fastest.
  JointPolicy decode(const BigInt& index) const;

 private:
  ReachableDecisionPoints points_;
  // Flattened (agent, decision point) arities, agent-major.
  std::vector<std::pair<int, std::size_t>> slots_;
  std::vector<int> arities_;
  BigInt total_;
};

}  // namespace decmdp
