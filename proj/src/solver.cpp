#include "decmdp/solver.hpp"

#include <thread>

namespace decmdp {

namespace {

struct SliceBest {
  bool found = false;
  Rational value;
  BigInt index;  // first index reaching value within the slice
};

SliceBest scan_slice(const DecPomdp& model, const JointPolicyEnumerator& enumr,
                     const BigInt& begin, const BigInt& end) {
  SliceBest best;
  for (BigInt idx = begin; idx < end; ++idx) {
    JointPolicy policy = enumr.decode(idx);
    Rational v = exact_value(model, policy).expected_total_reward;
    if (!best.found || v > best.value) {
      best.found = true;
      best.value = v;
      best.index = idx;
    }
  }
  return best;
}

}  // namespace

SolveResult solve_decpomdp_exact(const DecPomdp& model,
                                 const SolveOptions& options) {
  JointPolicyEnumerator enumr(model);
  const BigInt& total = enumr.total();
  if (total > options.budget) throw BudgetExceeded(total);

  if (options.early_exit && options.threshold) {
    SliceBest best;
    for (BigInt idx = 0; idx < total; ++idx) {
      JointPolicy policy = enumr.decode(idx);
      Rational v = exact_value(model, policy).expected_total_reward;
      if (!best.found || v > best.value) {
        best.found = true;
        best.value = v;
        best.index = idx;
      }
      if (v >= *options.threshold) {
        return {v, std::move(policy), idx + 1};
      }
    }
    return {best.value, enumr.decode(best.index), total};
  }

  int threads = options.threads;
  if (threads < 1) threads = 1;
  if (BigInt(threads) > total) threads = static_cast<int>(total);

  std::vector<SliceBest> results(threads);
  if (threads == 1) {
    results[0] = scan_slice(model, enumr, 0, total);
  } else {
    std::vector<std::thread> pool;
    BigInt chunk = total / threads;
    BigInt rem = total % threads;
    BigInt begin = 0;
    for (int w = 0; w < threads; ++w) {
      BigInt end = begin + chunk + (BigInt(w) < rem ? 1 : 0);
      pool.emplace_back([&, w, begin, end] {
        results[w] = scan_slice(model, enumr, begin, end);
      });
      begin = end;
    }
    for (auto& t : pool) t.join();
  }

  // Deterministic merge: best value, then smallest index.
  SliceBest best;
  for (const auto& r : results) {
    if (!r.found) continue;
    if (!best.found || r.value > best.value ||
        (r.value == best.value && r.index < best.index)) {
      best = r;
    }
  }
  return {best.value, enumr.decode(best.index), total};
}

bool decide(const DecisionInstance& instance, const SolveOptions& options) {
  if (!instance.allow_long_horizon &&
      instance.model.horizon >= instance.model.num_states()) {
    throw PreconditionError(
        "horizon T=" + std::to_string(instance.model.horizon) +
        " must be smaller than |S|=" +
        std::to_string(instance.model.num_states()) +
        " (use --allow-long-horizon to override)");
  }
  SolveOptions opts = options;
  if (opts.early_exit) opts.threshold = instance.threshold;
  SolveResult result = solve_decpomdp_exact(instance.model, opts);
  return result.optimal_value >= instance.threshold;
}

MdpSolveResult solve_mdp_dp(const Mdp& mdp) {
  const DecPomdp& model = mdp.inner;
  int ns = model.num_states();
  int T = model.horizon;

  // obs(s') lookup for action availability at epochs >= 1.
  std::vector<std::optional<int>> obs_of_state(ns);
  for (const auto& [key, row] : model.observation_probs) {
    for (const auto& [o, p] : row) {
      if (p != Rational(0)) obs_of_state[key.second] = o[0];
    }
  }

  std::vector<Rational> value(ns, Rational(0));  // V_T = 0
  MdpSolveResult result;
  result.action_by_time_state.assign(T, std::vector<int>(ns, -1));

  for (int t = T - 1; t >= 0; --t) {
    std::vector<Rational> next(ns, Rational(0));
    for (int s = 0; s < ns; ++s) {
      std::optional<int> last;
      if (t > 0) last = obs_of_state[s];
      const std::vector<int>& acts =
          (t > 0 && last) ? model.available_actions(0, last)
                          : model.agents[0].initial_actions;
      bool found = false;
      Rational best(0);
      int best_a = -1;
      for (int a : acts) {
        JointAction ja{a};
        Rational q = model.reward(s, ja);
        const auto* row = model.transition_row(s, ja);
        if (row) {
          for (const auto& [s2, p] : *row) q += p * value[s2];
        }
        if (!found || q > best) {
          found = true;
          best = q;
          best_a = a;
        }
      }
      next[s] = best;
      result.action_by_time_state[t][s] = best_a;
    }
    value = std::move(next);
  }
  result.optimal_value = value[model.start];
  return result;
}

namespace {

// Single-agent evaluation by belief propagation over observation
// histories: a separate route from the joint-node machinery behind
// exact_value, used to cross-check it in the m=1 case.
Rational pomdp_policy_value(const DecPomdp& model, const LocalPolicy& policy) {
  std::map<ObservationHistory, std::map<int, Rational>> beliefs;
  beliefs[{}][model.start] = Rational(1);
  Rational total(0);
  for (int t = 0; t < model.horizon; ++t) {
    std::map<ObservationHistory, std::map<int, Rational>> next;
    for (const auto& [h, belief] : beliefs) {
      JointAction a{policy.action_for(h)};
      for (const auto& [s, p] : belief) {
        total += p * model.reward(s, a);
        if (t + 1 == model.horizon) continue;
        const auto* row = model.transition_row(s, a);
        if (!row) continue;
        for (const auto& [s2, tp] : *row) {
          if (tp == Rational(0)) continue;
          const auto* orow = model.observation_row(a, s2);
          if (!orow) continue;
          for (const auto& [o, op] : *orow) {
            if (op == Rational(0)) continue;
            ObservationHistory nh = h;
            nh.push_back(o[0]);
            next[std::move(nh)][s2] += p * tp * op;
          }
        }
      }
    }
    beliefs = std::move(next);
  }
  return total;
}

}  // namespace

SolveResult solve_pomdp_exact(const Pomdp& model, const SolveOptions& options) {
  if (model.inner.num_agents() != 1) {
    throw ArityError("solve_pomdp_exact requires m=1");
  }
  JointPolicyEnumerator enumr(model.inner);
  const BigInt& total = enumr.total();
  if (total > options.budget) throw BudgetExceeded(total);

  bool found = false;
  Rational best;
  BigInt best_index;
  for (BigInt idx = 0; idx < total; ++idx) {
    JointPolicy policy = enumr.decode(idx);
    Rational v = pomdp_policy_value(model.inner, policy.locals[0]);
    if (!found || v > best) {
      found = true;
      best = v;
      best_index = idx;
    }
    if (options.early_exit && options.threshold && v >= *options.threshold) {
      return {v, std::move(policy), idx + 1};
    }
  }
  return {best, enumr.decode(best_index), total};
}

}  // namespace decmdp
