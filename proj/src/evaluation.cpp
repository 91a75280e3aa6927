#include "decmdp/evaluation.hpp"

#include <cassert>
#include <cmath>
#include <random>

namespace decmdp {

namespace {

using JointHistory = std::vector<JointObservation>;

// Distribution over (joint history, state) with exact probabilities.
using NodeMap = std::map<JointHistory, std::map<int, Rational>>;

JointAction actions_from_policy(const DecPomdp& model,
                                const JointPolicy& policy,
                                const JointHistory& jh) {
  int m = model.num_agents();
  JointAction a(m);
  for (int i = 0; i < m; ++i) {
    ObservationHistory local(jh.size());
    for (std::size_t k = 0; k < jh.size(); ++k) local[k] = jh[k][i];
    a[i] = policy.locals.at(i).action_for(local);
  }
  return a;
}

// One propagation epoch: accrues reward into `epoch_reward` and returns
// the successor node distribution.
NodeMap propagate(const DecPomdp& model, const JointPolicy& policy,
                  const NodeMap& nodes, Rational& epoch_reward,
                  bool build_successors) {
  NodeMap next;
  for (const auto& [jh, dist] : nodes) {
    JointAction a = actions_from_policy(model, policy, jh);
    for (const auto& [s, p] : dist) {
      epoch_reward += p * model.reward(s, a);
      if (!build_successors) continue;
      const auto* row = model.transition_row(s, a);
      if (!row) continue;
      for (const auto& [s2, tp] : *row) {
        if (tp == Rational(0)) continue;
        const auto* orow = model.observation_row(a, s2);
        if (!orow) continue;
        for (const auto& [o, op] : *orow) {
          if (op == Rational(0)) continue;
          JointHistory njh = jh;
          njh.push_back(o);
          next[std::move(njh)][s2] += p * tp * op;
        }
      }
    }
  }
  return next;
}

}  // namespace

ValueResult exact_value(const DecPomdp& model, const JointPolicy& policy) {
  ValueResult result;
  result.expected_total_reward = Rational(0);
  NodeMap nodes;
  nodes[{}][model.start] = Rational(1);
  for (int t = 0; t < model.horizon; ++t) {
    Rational epoch_reward(0);
    bool more = t + 1 < model.horizon;
    nodes = propagate(model, policy, nodes, epoch_reward, more);
    result.per_epoch_rewards.push_back(epoch_reward);
    result.expected_total_reward += epoch_reward;
  }
  return result;
}

std::map<int, Rational> belief_states(
    const DecPomdp& model, const JointPolicy& policy,
    const std::vector<JointObservation>& sequence) {
  if (static_cast<int>(sequence.size()) > model.horizon) {
    throw ConditioningError("observation sequence longer than the horizon");
  }
  NodeMap nodes;
  nodes[{}][model.start] = Rational(1);
  for (std::size_t t = 0; t < sequence.size(); ++t) {
    Rational ignored(0);
    nodes = propagate(model, policy, nodes, ignored, true);
    // Keep only nodes consistent with the given prefix.
    JointHistory prefix(sequence.begin(), sequence.begin() + t + 1);
    NodeMap filtered;
    auto it = nodes.find(prefix);
    if (it != nodes.end()) filtered.insert(*it);
    nodes = std::move(filtered);
    if (nodes.empty()) {
      throw ConditioningError("observation sequence has probability zero");
    }
  }
  Rational total(0);
  for (const auto& [jh, dist] : nodes) {
    for (const auto& [s, p] : dist) total += p;
  }
  if (total == Rational(0)) {
    throw ConditioningError("observation sequence has probability zero");
  }
  std::map<int, Rational> belief;
  for (const auto& [jh, dist] : nodes) {
    for (const auto& [s, p] : dist) {
      if (p != Rational(0)) belief[s] += p / total;
    }
  }
  return belief;
}

double SampleEstimate::stderr_mean() const {
  if (episodes <= 0) return 0;
  return std::sqrt(variance / static_cast<double>(episodes));
}

SampleEstimate simulate(const DecPomdp& model, const JointPolicy& policy,
                        long episodes, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  int m = model.num_agents();

  double sum = 0, sumsq = 0;
  for (long e = 0; e < episodes; ++e) {
    int s = model.start;
    std::vector<ObservationHistory> hists(m);
    double total = 0;
    for (int t = 0; t < model.horizon; ++t) {
      JointAction a(m);
      for (int i = 0; i < m; ++i) a[i] = policy.locals[i].action_for(hists[i]);
      total += rational_to_double(model.reward(s, a));
      if (t + 1 == model.horizon) break;
      const auto* row = model.transition_row(s, a);
      if (!row) break;
      double u = unif(rng);
      double acc = 0;
      int s2 = row->rbegin()->first;
      for (const auto& [cand, p] : *row) {
        acc += rational_to_double(p);
        if (u < acc) {
          s2 = cand;
          break;
        }
      }
      const auto* orow = model.observation_row(a, s2);
      if (!orow) break;
      double v = unif(rng);
      acc = 0;
      JointObservation obs = orow->rbegin()->first;
      for (const auto& [cand, p] : *orow) {
        acc += rational_to_double(p);
        if (v < acc) {
          obs = cand;
          break;
        }
      }
      for (int i = 0; i < m; ++i) hists[i].push_back(obs[i]);
      s = s2;
    }
    sum += total;
    sumsq += total * total;
  }

  SampleEstimate est;
  est.episodes = episodes;
  if (episodes > 0) est.mean = sum / static_cast<double>(episodes);
  if (episodes > 1) {
    double n = static_cast<double>(episodes);
    est.variance = (sumsq - n * est.mean * est.mean) / (n - 1);
    if (est.variance < 0) est.variance = 0;  // rounding guard
  }
  return est;
}

}  // namespace decmdp
