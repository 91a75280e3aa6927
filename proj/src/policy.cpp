#include "decmdp/policy.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace decmdp {

namespace {

std::string history_str(const ObservationHistory& h) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i) os << ",";
    os << h[i];
  }
  os << "]";
  return os.str();
}

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

}  // namespace

int LocalPolicy::action_for(const ObservationHistory& history) const {
  auto it = decisions.find(history);
  if (it == decisions.end()) {
    throw UndefinedDecisionError(
        agent, history,
        "agent " + std::to_string(agent) + " has no decision for history " +
            history_str(history));
  }
  return it->second;
}

ReachableDecisionPoints reachable_decision_points(const DecPomdp& model) {
  int m = model.num_agents();
  // map keeps lexicographic order; prefixes sort before extensions.
  std::vector<std::map<ObservationHistory, std::vector<int>>> collected(m);

  // Frontier over joint histories; each carries the set of states it can
  // co-occur with. Actions are unioned over every available choice, so
  // the closure covers all assignments at once.
  using JointHistory = std::vector<JointObservation>;
  std::map<JointHistory, std::set<int>> frontier;
  frontier[{}].insert(model.start);

  for (int t = 0; t < model.horizon; ++t) {
    std::map<JointHistory, std::set<int>> next;
    for (const auto& [jh, states] : frontier) {
      std::vector<const std::vector<int>*> sets(m);
      for (int i = 0; i < m; ++i) {
        std::optional<int> last;
        if (!jh.empty()) last = jh.back()[i];
        sets[i] = &model.available_actions(i, last);
      }
      // Record this joint history's projections as decision points.
      for (int i = 0; i < m; ++i) {
        ObservationHistory local(jh.size());
        for (std::size_t k = 0; k < jh.size(); ++k) local[k] = jh[k][i];
        collected[i].emplace(std::move(local), *sets[i]);
      }
      if (t + 1 == model.horizon) continue;  // no successor histories needed
      for_each_joint(sets, [&](const JointAction& a) {
        for (int s : states) {
          const auto* row = model.transition_row(s, a);
          if (!row) continue;
          for (const auto& [s2, p] : *row) {
            if (p == Rational(0)) continue;
            const auto* orow = model.observation_row(a, s2);
            if (!orow) continue;
            for (const auto& [o, q] : *orow) {
              if (q == Rational(0)) continue;
              JointHistory njh = jh;
              njh.push_back(o);
              next[std::move(njh)].insert(s2);
            }
          }
        }
      });
    }
    frontier = std::move(next);
  }

  ReachableDecisionPoints result;
  result.per_agent.resize(m);
  for (int i = 0; i < m; ++i) {
    for (auto& [h, acts] : collected[i]) {
      result.per_agent[i].push_back({h, acts});
    }
  }
  return result;
}

std::vector<ObservationHistory> reachable_histories(const DecPomdp& model,
                                                    int agent) {
  auto points = reachable_decision_points(model);
  std::vector<ObservationHistory> out;
  for (const auto& p : points.per_agent.at(agent)) out.push_back(p.history);
  return out;
}

BigInt count_local_policies(const ReachableDecisionPoints& points, int agent) {
  BigInt count(1);
  for (const auto& p : points.per_agent.at(agent)) {
    count *= static_cast<int>(p.actions.size());
  }
  return count;
}

BigInt count_local_policies(const DecPomdp& model, int agent) {
  return count_local_policies(reachable_decision_points(model), agent);
}

JointPolicyEnumerator::JointPolicyEnumerator(const DecPomdp& model)
    : points_(reachable_decision_points(model)), total_(1) {
  for (int i = 0; i < model.num_agents(); ++i) {
    for (std::size_t k = 0; k < points_.per_agent[i].size(); ++k) {
      slots_.emplace_back(i, k);
      int arity = static_cast<int>(points_.per_agent[i][k].actions.size());
      arities_.push_back(arity);
      total_ *= arity;
    }
  }
}

JointPolicy JointPolicyEnumerator::decode(const BigInt& index) const {
  if (index < 0 || index >= total_) {
    throw InputError("policy index out of range: " + index.str());
  }
  std::vector<int> digits(slots_.size(), 0);
  BigInt rest = index;
  for (std::size_t k = slots_.size(); k-- > 0;) {
    BigInt q = rest / arities_[k];
    digits[k] = static_cast<int>(rest - q * arities_[k]);
    rest = q;
  }
  JointPolicy policy;
  policy.locals.resize(points_.per_agent.size());
  for (std::size_t i = 0; i < points_.per_agent.size(); ++i) {
    policy.locals[i].agent = static_cast<int>(i);
  }
  for (std::size_t k = 0; k < slots_.size(); ++k) {
    auto [agent, slot] = slots_[k];
    const DecisionPoint& p = points_.per_agent[agent][slot];
    policy.locals[agent].decisions[p.history] = p.actions[digits[k]];
  }
  return policy;
}

}  // namespace decmdp
