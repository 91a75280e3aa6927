#include "decmdp/evaluation.hpp"
#include "decmdp/model.hpp"
#include "decmdp/policy.hpp"
#include "support/builders.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace decmdp;
using namespace decmdp::testing;

TEST_CASE("validate: single-state single-action model is clean") {
  DecPomdp m = make_single_state_model(3);
  CHECK(validate_model(m).ok());
}

TEST_CASE("validate: short transition row is a stochasticity violation") {
  DecPomdp m = make_single_state_model(2);
  m.transitions.begin()->second.begin()->second = Rational(9, 10);
  auto report = validate_model(m);
  CHECK_FALSE(report.ok());
  bool found = false;
  for (const auto& issue : report.issues) {
    if (issue.kind == ValidationIssue::Kind::TransitionSum) {
      found = true;
      CHECK(issue.message.find("s0") != std::string::npos);
      CHECK(issue.message.find("9/10") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("validate: negative probability is a range violation") {
  DecPomdp m = make_single_state_model(2);
  int s = 0;
  JointAction a{0};
  m.transitions[{s, a}][s] = Rational(3, 2);
  m.add_transition(s, a, m.intern_state("s1"), Rational(-1, 2));
  m.add_observation(a, 1, {0}, Rational(1));
  auto report = validate_model(m);
  bool range = false;
  for (const auto& issue : report.issues) {
    if (issue.kind == ValidationIssue::Kind::Range) range = true;
  }
  CHECK(range);
}

TEST_CASE("joint observability: identity observers yield a witness") {
  // Two agents, both deterministically observe the state identity.
  DecPomdp m;
  int s0 = m.intern_state("s0");
  int s1 = m.intern_state("s1");
  for (int i = 0; i < 2; ++i) {
    AgentSpec agent;
    agent.intern_observation("o0");
    agent.intern_observation("o1");
    int a = agent.intern_action("a");
    agent.initial_actions = {a};
    agent.actions_by_observation[0] = {a};
    agent.actions_by_observation[1] = {a};
    m.agents.push_back(agent);
  }
  m.horizon = 2;
  JointAction a{0, 0};
  m.add_transition(s0, a, s0, Rational(1, 2));
  m.add_transition(s0, a, s1, Rational(1, 2));
  m.add_transition(s1, a, s1, Rational(1));
  m.add_observation(a, s0, {0, 0}, Rational(1));
  m.add_observation(a, s1, {1, 1}, Rational(1));
  REQUIRE(validate_model(m).ok());

  auto result = check_joint_observability(m);
  REQUIRE(result.witness);
  CHECK(result.witness->at({0, 0}) == s0);
  CHECK(result.witness->at({1, 1}) == s1);
}

TEST_CASE("joint observability: shared tuple from two states is a counterexample") {
  DecPomdp m;
  int s0 = m.intern_state("s0");
  int s1 = m.intern_state("s1");
  int s2 = m.intern_state("s2");
  AgentSpec agent;
  agent.intern_observation("o");
  int a = agent.intern_action("a");
  agent.initial_actions = {a};
  agent.actions_by_observation[0] = {a};
  m.agents.push_back(agent);
  m.horizon = 2;
  m.add_transition(s0, {a}, s1, Rational(1, 2));
  m.add_transition(s0, {a}, s2, Rational(1, 2));
  m.add_transition(s1, {a}, s1, Rational(1));
  m.add_transition(s2, {a}, s2, Rational(1));
  for (int s : {s1, s2}) m.add_observation({a}, s, {0}, Rational(1));

  auto result = check_joint_observability(m);
  REQUIRE(result.counterexample);
  int lo = std::min(result.counterexample->state_a, result.counterexample->state_b);
  int hi = std::max(result.counterexample->state_a, result.counterexample->state_b);
  CHECK(lo == s1);
  CHECK(hi == s2);
}

TEST_CASE("joint observability agrees with brute-force recomputation") {
  std::mt19937 rng(11);
  RandomModelParams params;
  params.num_agents = 2;
  params.max_states = 5;
  for (int trial = 0; trial < 30; ++trial) {
    DecPomdp m = random_decpomdp(rng, params);
    auto result = check_joint_observability(m);
    // Brute force: the global tuple -> state map is single-valued.
    std::map<JointObservation, std::set<int>> emitters;
    for (const auto& [key, row] : m.observation_probs) {
      for (const auto& [o, p] : row) {
        if (p != Rational(0)) emitters[o].insert(key.second);
      }
    }
    bool single_valued = true;
    for (const auto& [o, states] : emitters) {
      if (states.size() > 1) single_valued = false;
    }
    CHECK(result.witness.has_value() == single_valued);
  }
}

TEST_CASE("as_single_agent: identity repackaging, arity error on m=2") {
  DecPomdp m = make_coin_guess_model();
  Pomdp p = as_single_agent(m);
  CHECK(p.inner.states == m.states);
  CHECK(p.inner.transitions == m.transitions);

  DecPomdp two;
  two.intern_state("s");
  two.agents.resize(2);
  CHECK_THROWS_AS(as_single_agent(two), ArityError);
}

TEST_CASE("as_single_agent preserves exact_value on random models") {
  std::mt19937 rng(17);
  RandomModelParams params;  // m=1
  for (int trial = 0; trial < 20; ++trial) {
    DecPomdp m = random_decpomdp(rng, params);
    Pomdp p = as_single_agent(m);
    JointPolicyEnumerator enumr(m);
    BigInt total = enumr.total();
    BigInt step = total > 5 ? total / 5 : BigInt(1);
    for (BigInt idx = 0; idx < total; idx += step) {
      JointPolicy policy = enumr.decode(idx);
      CHECK(exact_value(m, policy).expected_total_reward ==
            exact_value(p.inner, policy).expected_total_reward);
    }
  }
}

TEST_CASE("transition rows of valid models sum to exactly one") {
  std::mt19937 rng(23);
  RandomModelParams params;
  params.num_agents = 2;
  for (int trial = 0; trial < 20; ++trial) {
    DecPomdp m = random_decpomdp(rng, params);
    REQUIRE(validate_model(m).ok());
    for (const auto& [key, row] : m.transitions) {
      Rational sum(0);
      for (const auto& [s2, p] : row) sum += p;
      CHECK(sum == Rational(1));
    }
  }
}
