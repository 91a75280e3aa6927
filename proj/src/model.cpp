#include "decmdp/model.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace decmdp {

namespace {

int find_name(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw InputError("unknown name: " + name);
  return static_cast<int>(it - names.begin());
}

int intern_name(std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<int>(it - names.begin());
  names.push_back(name);
  return static_cast<int>(names.size()) - 1;
}

// Cartesian product of per-agent action sets.
void for_each_joint(const std::vector<const std::vector<int>*>& sets,
                    const std::function<void(const JointAction&)>& fn) {
  JointAction a(sets.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == sets.size()) {
      fn(a);
      return;
    }
    for (int act : *sets[i]) {
      a[i] = act;
      rec(i + 1);
    }
  };
  rec(0);
}

std::string joint_action_str(const DecPomdp& m, const JointAction& a) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << m.agents[i].actions[a[i]];
  }
  os << ")";
  return os.str();
}

std::string joint_obs_str(const DecPomdp& m, const JointObservation& o) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) os << ",";
    os << m.agents[i].observations[o[i]];
  }
  os << ")";
  return os.str();
}

}  // namespace

int AgentSpec::observation_id(const std::string& name) const {
  return find_name(observations, name);
}
int AgentSpec::action_id(const std::string& name) const {
  return find_name(actions, name);
}
int AgentSpec::intern_observation(const std::string& name) {
  int id = intern_name(observations, name);
  if (static_cast<int>(actions_by_observation.size()) <= id) {
    actions_by_observation.resize(id + 1);
  }
  return id;
}
int AgentSpec::intern_action(const std::string& name) {
  return intern_name(actions, name);
}

int DecPomdp::state_id(const std::string& name) const {
  return find_name(states, name);
}
int DecPomdp::intern_state(const std::string& name) {
  return intern_name(states, name);
}

void DecPomdp::add_transition(int s, const JointAction& a, int s2,
                              const Rational& p) {
  transitions[{s, a}][s2] += p;
}
void DecPomdp::add_observation(const JointAction& a, int s2,
                               const JointObservation& o, const Rational& p) {
  observation_probs[{a, s2}][o] += p;
}
void DecPomdp::set_reward(int s, const JointAction& a, const Rational& r) {
  rewards[{s, a}] = r;
}

Rational DecPomdp::reward(int s, const JointAction& a) const {
  auto it = rewards.find({s, a});
  return it == rewards.end() ? Rational(0) : it->second;
}

const std::map<int, Rational>* DecPomdp::transition_row(
    int s, const JointAction& a) const {
  auto it = transitions.find({s, a});
  return it == transitions.end() ? nullptr : &it->second;
}

const std::map<JointObservation, Rational>* DecPomdp::observation_row(
    const JointAction& a, int s2) const {
  auto it = observation_probs.find({a, s2});
  return it == observation_probs.end() ? nullptr : &it->second;
}

const std::vector<int>& DecPomdp::available_actions(
    int agent, std::optional<int> last_obs) const {
  const AgentSpec& spec = agents[agent];
  if (!last_obs) return spec.initial_actions;
  return spec.actions_by_observation[*last_obs];
}

bool ValidationReport::ok() const {
  return std::all_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.kind == ValidationIssue::Kind::ObservabilityReading;
  });
}

ValidationReport validate_model(const DecPomdp& model) {
  ValidationReport report;
  auto add = [&](ValidationIssue::Kind k, const std::string& msg) {
    report.issues.push_back({k, msg});
  };
  const Rational zero(0), one(1);

  for (const auto& [key, row] : model.transitions) {
    Rational sum(0);
    for (const auto& [s2, p] : row) {
      if (p < zero || p > one) {
        add(ValidationIssue::Kind::Range,
            "P(" + model.states[s2] + "|" + model.states[key.first] + "," +
                joint_action_str(model, key.second) + ") = " +
                rational_to_string(p) + " outside [0,1]");
      }
      sum += p;
    }
    if (sum != one) {
      add(ValidationIssue::Kind::TransitionSum,
          "transition row (" + model.states[key.first] + ", " +
              joint_action_str(model, key.second) + ") sums to " +
              rational_to_string(sum));
    }
  }

  for (const auto& [key, row] : model.observation_probs) {
    Rational sum(0);
    for (const auto& [o, p] : row) {
      if (p < zero || p > one) {
        add(ValidationIssue::Kind::Range,
            "O(" + joint_obs_str(model, o) + "|" +
                joint_action_str(model, key.first) + "," +
                model.states[key.second] + ") = " + rational_to_string(p) +
                " outside [0,1]");
      }
      sum += p;
    }
    if (sum != one) {
      add(ValidationIssue::Kind::ObservationSum,
          "observation row (" + joint_action_str(model, key.first) + ", " +
              model.states[key.second] + ") sums to " +
              rational_to_string(sum));
    }
  }

  // Forward closure over (state, per-agent last observation) to find the
  // (s, a) and (a, s') pairs that must be populated.
  int m = model.num_agents();
  using Context = std::pair<int, std::vector<std::optional<int>>>;
  std::set<Context> seen;
  std::vector<Context> frontier;
  Context init{model.start, std::vector<std::optional<int>>(m)};
  seen.insert(init);
  frontier.push_back(init);
  std::set<std::pair<int, JointAction>> missing_trans;
  std::set<std::pair<JointAction, int>> missing_obs;
  for (int t = 0; t < model.horizon && !frontier.empty(); ++t) {
    std::vector<Context> next;
    for (const auto& [s, last] : frontier) {
      std::vector<const std::vector<int>*> sets(m);
      bool empty_set = false;
      for (int i = 0; i < m; ++i) {
        sets[i] = &model.available_actions(i, last[i]);
        if (sets[i]->empty()) empty_set = true;
      }
      if (empty_set) {
        add(ValidationIssue::Kind::EmptyActionSet,
            "no available joint action in state " + model.states[s]);
        continue;
      }
      for_each_joint(sets, [&](const JointAction& a) {
        const auto* row = model.transition_row(s, a);
        if (!row) {
          if (missing_trans.insert({s, a}).second) {
            add(ValidationIssue::Kind::MissingTransition,
                "no transition row for reachable (" + model.states[s] + ", " +
                    joint_action_str(model, a) + ")");
          }
          return;
        }
        for (const auto& [s2, p] : *row) {
          if (p == zero) continue;
          const auto* orow = model.observation_row(a, s2);
          if (!orow) {
            if (missing_obs.insert({a, s2}).second) {
              add(ValidationIssue::Kind::MissingObservation,
                  "no observation row for reachable (" +
                      joint_action_str(model, a) + ", " + model.states[s2] +
                      ")");
            }
            continue;
          }
          for (const auto& [o, q] : *orow) {
            if (q == zero) continue;
            std::vector<std::optional<int>> nlast(m);
            for (int i = 0; i < m; ++i) nlast[i] = o[i];
            Context c{s2, nlast};
            if (seen.insert(c).second) next.push_back(c);
          }
        }
      });
    }
    frontier = std::move(next);
  }

  // Note when the global and per-action observability readings disagree:
  // every per-action context is single-valued but some tuple names two
  // states under different actions.
  auto global = check_joint_observability(model);
  if (global.counterexample) {
    bool per_action_ok = true;
    std::map<std::pair<JointAction, JointObservation>, int> per_action;
    for (const auto& [key, row] : model.observation_probs) {
      for (const auto& [o, p] : row) {
        if (p == zero) continue;
        auto [it, inserted] = per_action.insert({{key.first, o}, key.second});
        if (!inserted && it->second != key.second) per_action_ok = false;
      }
    }
    if (per_action_ok) {
      add(ValidationIssue::Kind::ObservabilityReading,
          "joint observability holds per joint action but not globally: " +
              joint_obs_str(model, global.counterexample->observation) +
              " names both " + model.states[global.counterexample->state_a] +
              " and " + model.states[global.counterexample->state_b]);
    }
  }

  return report;
}

JointObservabilityResult check_joint_observability(const DecPomdp& model) {
  JointObservabilityResult result;
  std::map<JointObservation, int> witness;
  for (const auto& [key, row] : model.observation_probs) {
    for (const auto& [o, p] : row) {
      if (p == Rational(0)) continue;
      auto [it, inserted] = witness.insert({o, key.second});
      if (!inserted && it->second != key.second) {
        result.counterexample =
            JointObservabilityResult::Counterexample{o, it->second, key.second};
        return result;
      }
    }
  }
  result.witness = std::move(witness);
  return result;
}

Pomdp as_single_agent(const DecPomdp& model) {
  if (model.num_agents() != 1) {
    throw ArityError("as_single_agent requires m=1, got m=" +
                     std::to_string(model.num_agents()));
  }
  return Pomdp{model};
}

Mdp as_mdp(const DecPomdp& model) {
  if (model.num_agents() != 1) {
    throw ArityError("as_mdp requires m=1, got m=" +
                     std::to_string(model.num_agents()));
  }
  // Observation must be a deterministic, injective function of the state.
  std::map<int, int> state_obs;   // s' -> o
  std::map<int, int> obs_state;   // o -> s'
  for (const auto& [key, row] : model.observation_probs) {
    for (const auto& [o, p] : row) {
      if (p == Rational(0)) continue;
      if (p != Rational(1)) {
        throw InputError("as_mdp: stochastic observation in state " +
                         model.states[key.second]);
      }
      auto [it, ins] = state_obs.insert({key.second, o[0]});
      if (!ins && it->second != o[0]) {
        throw InputError("as_mdp: state " + model.states[key.second] +
                         " emits two observations");
      }
      auto [jt, jns] = obs_state.insert({o[0], key.second});
      if (!jns && jt->second != key.second) {
        throw InputError("as_mdp: observation " +
                         model.agents[0].observations[o[0]] +
                         " emitted by two states");
      }
    }
  }
  return Mdp{model};
}

}  // namespace decmdp
