#include "decmdp/solver.hpp"
#include "support/builders.hpp"

#include <doctest.h>

using namespace decmdp;
using namespace decmdp::testing;

TEST_CASE("solve: all-forced model returns the unique policy") {
  DecPomdp m = make_single_state_model(3);
  SolveResult r = solve_decpomdp_exact(m);
  CHECK(r.optimal_value == Rational(3));
  CHECK(r.policies_examined == 1);
}

TEST_CASE("solve: coin model prefers the truthful policy") {
  DecPomdp m = make_coin_guess_model();
  SolveResult r = solve_decpomdp_exact(m);
  CHECK(r.optimal_value == Rational(1));
  CHECK(r.policies_examined == 4);
  // Truthful: guess_h after oh, guess_t after ot.
  CHECK(r.argmax_policy.locals[0].decisions.at({0}) == 1);
  CHECK(r.argmax_policy.locals[0].decisions.at({1}) == 2);
}

TEST_CASE("solve: budget refusal names the policy count") {
  DecPomdp m = make_coin_guess_model();
  SolveOptions opts;
  opts.budget = 3;
  try {
    solve_decpomdp_exact(m, opts);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.count == 4);
  }
}

TEST_CASE("solve_mdp_dp: deterministic chain earns 1 per step") {
  DecPomdp m = make_single_state_model(5);
  MdpSolveResult r = solve_mdp_dp(as_mdp(m));
  CHECK(r.optimal_value == Rational(5));
}

TEST_CASE("solve_mdp_dp: zero-reward model is worth zero") {
  std::mt19937 rng(3);
  RandomModelParams params;
  params.identity_observations = true;
  DecPomdp m = random_decpomdp(rng, params);
  m.rewards.clear();
  CHECK(solve_mdp_dp(as_mdp(m)).optimal_value == Rational(0));
}

TEST_CASE("solve_mdp_dp matches the exhaustive nonstationary oracle") {
  std::mt19937 rng(31);
  RandomModelParams params;
  params.identity_observations = true;
  for (int trial = 0; trial < 25; ++trial) {
    DecPomdp m = random_decpomdp(rng, params);
    CHECK(solve_mdp_dp(as_mdp(m)).optimal_value == mdp_bruteforce_optimal(m));
  }
}

TEST_CASE("pomdp specialization equals the generic path") {
  std::mt19937 rng(37);
  RandomModelParams params;
  for (int trial = 0; trial < 25; ++trial) {
    DecPomdp m = random_decpomdp(rng, params);
    SolveResult generic = solve_decpomdp_exact(m);
    SolveResult special = solve_pomdp_exact(as_single_agent(m));
    CHECK(generic.optimal_value == special.optimal_value);
  }
}

TEST_CASE("uninformative observations with T=1 pick the best initial action") {
  DecPomdp m;
  int s0 = m.intern_state("s0");
  int s1 = m.intern_state("s1");
  AgentSpec agent;
  agent.intern_observation("o");
  int a0 = agent.intern_action("a0");
  int a1 = agent.intern_action("a1");
  agent.initial_actions = {a0, a1};
  agent.actions_by_observation[0] = {a0, a1};
  m.agents.push_back(agent);
  m.horizon = 1;
  for (int a : {a0, a1}) {
    m.add_transition(s0, {a}, s1, Rational(1));
    m.add_observation({a}, s1, {0}, Rational(1));
  }
  m.set_reward(s0, {a0}, Rational(2));
  m.set_reward(s0, {a1}, Rational(5));
  SolveResult r = solve_pomdp_exact(as_single_agent(m));
  CHECK(r.optimal_value == Rational(5));
}

TEST_CASE("every enumerated policy is bounded by the optimum") {
  std::mt19937 rng(41);
  RandomModelParams params;
  params.num_agents = 2;
  params.max_states = 3;
  params.max_horizon = 2;
  DecPomdp m = random_decpomdp(rng, params);
  SolveResult r = solve_decpomdp_exact(m);
  JointPolicyEnumerator enumr(m);
  for (BigInt i = 0; i < enumr.total(); ++i) {
    CHECK(exact_value(m, enumr.decode(i)).expected_total_reward <=
          r.optimal_value);
  }
}

TEST_CASE("parallel and serial solving agree on value and argmax") {
  std::mt19937 rng(43);
  RandomModelParams params;
  params.num_agents = 2;
  params.max_states = 3;
  params.max_horizon = 2;
  for (int trial = 0; trial < 5; ++trial) {
    DecPomdp m = random_decpomdp(rng, params);
    SolveOptions serial, parallel;
    parallel.threads = 4;
    SolveResult a = solve_decpomdp_exact(m, serial);
    SolveResult b = solve_decpomdp_exact(m, parallel);
    CHECK(a.optimal_value == b.optimal_value);
    for (std::size_t i = 0; i < a.argmax_policy.locals.size(); ++i) {
      CHECK(a.argmax_policy.locals[i].decisions ==
            b.argmax_policy.locals[i].decisions);
    }
  }
}

TEST_CASE("decide: thresholds and the horizon restriction") {
  DecPomdp m = make_coin_guess_model();  // optimal value 1, |S| = 4, T = 2
  DecisionInstance inst;
  inst.model = m;
  inst.threshold = Rational(1);
  CHECK(decide(inst));
  inst.threshold = Rational(2);  // optimal + 1
  CHECK_FALSE(decide(inst));

  inst.model.horizon = 4;  // T = |S|
  CHECK_THROWS_AS(decide(inst), PreconditionError);
  inst.allow_long_horizon = true;
  inst.threshold = Rational(1);
  CHECK(decide(inst));
}

TEST_CASE("decide: early exit preserves the answer") {
  DecPomdp m = make_coin_guess_model();
  DecisionInstance inst;
  inst.model = m;
  inst.threshold = Rational(1, 2);
  SolveOptions opts;
  opts.early_exit = true;
  CHECK(decide(inst, opts));
  CHECK(decide(inst));
}
