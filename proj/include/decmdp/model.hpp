#pragma once

#include "decmdp/errors.hpp"
#include "decmdp/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace decmdp {

// Indices into the per-agent action/observation name tables.
using JointAction = std::vector<int>;
using JointObservation = std::vector<int>;

struct AgentSpec {
  std::vector<std::string> observations;  // declaration order fixes ids
  std::vector<std::string> actions;       // declaration order fixes ids
  std::vector<int> initial_actions;       // available before the first observation
  // actions_by_observation[o] = available actions after observing o
  std::vector<std::vector<int>> actions_by_observation;

  int observation_id(const std::string& name) const;
  int action_id(const std::string& name) const;
  // Registers the name if unseen, returns its id.
  int intern_observation(const std::string& name);
  int intern_action(const std::string& name);
};

// The m-agent decentralized model. MDP, POMDP and DEC-MDP are views of
// this one structure (see Mdp/Pomdp/DecMdp below). Tables are sparse:
// a missing transition/observation entry is probability 0, a missing
// reward entry is reward 0.
struct DecPomdp {
  std::vector<std::string> states;
  int start = 0;
  std::vector<AgentSpec> agents;
  int horizon = 1;

  std::map<std::pair<int, JointAction>, std::map<int, Rational>> transitions;
  std::map<std::pair<JointAction, int>, std::map<JointObservation, Rational>>
      observation_probs;
  std::map<std::pair<int, JointAction>, Rational> rewards;

  int num_agents() const { return static_cast<int>(agents.size()); }
  int num_states() const { return static_cast<int>(states.size()); }

  int state_id(const std::string& name) const;
  int intern_state(const std::string& name);

  void add_transition(int s, const JointAction& a, int s2, const Rational& p);
  void add_observation(const JointAction& a, int s2, const JointObservation& o,
                       const Rational& p);
  void set_reward(int s, const JointAction& a, const Rational& r);

  Rational reward(int s, const JointAction& a) const;
  const std::map<int, Rational>* transition_row(int s, const JointAction& a) const;
  const std::map<JointObservation, Rational>* observation_row(
      const JointAction& a, int s2) const;

  // Actions available to agent i given its last observation (or none,
  // meaning the first epoch).
  const std::vector<int>& available_actions(int agent,
                                            std::optional<int> last_obs) const;
};

struct ValidationIssue {
  enum class Kind {
    Range,                 // probability outside [0,1]
    TransitionSum,         // row does not sum to 1
    ObservationSum,        // row does not sum to 1
    MissingTransition,     // reachable (s, a) with no transition row
    MissingObservation,    // reachable (a, s') with no observation row
    EmptyActionSet,        // an observation offers no actions
    ObservabilityReading,  // informational: global vs per-action reading differ
  };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  // True when no issue other than the informational reading note is present.
  bool ok() const;
};

ValidationReport validate_model(const DecPomdp& model);

struct JointObservabilityResult {
  // Exactly one of the two is set.
  std::optional<std::map<JointObservation, int>> witness;
  struct Counterexample {
    JointObservation observation;
    int state_a;
    int state_b;
  };
  std::optional<Counterexample> counterexample;
};

// Global reading: one joint-observation tuple must name one successor
// state across every (action, successor) context.
JointObservabilityResult check_joint_observability(const DecPomdp& model);

struct Pomdp {
  DecPomdp inner;
};

struct Mdp {
  DecPomdp inner;
};

struct DecMdp {
  DecPomdp inner;
  std::map<JointObservation, int> observability_witness;
};

// m=1 repackaging; throws ArityError otherwise.
Pomdp as_single_agent(const DecPomdp& model);

// m=1 with a deterministic, injective per-state observation. Throws
// ArityError / InputError when the assumptions fail.
Mdp as_mdp(const DecPomdp& model);

struct DecisionInstance {
  DecPomdp model;
  Rational threshold;
  bool allow_long_horizon = false;
};

}  // namespace decmdp
