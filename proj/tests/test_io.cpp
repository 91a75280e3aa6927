#include "decmdp/io.hpp"
#include "decmdp/reduction.hpp"
#include "support/builders.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

using namespace decmdp;
using namespace decmdp::testing;
using nlohmann::json;

TEST_CASE("model round trip is structurally identical") {
  DecPomdp m = make_coin_guess_model();
  DecPomdp back = model_from_json(model_to_json(m));
  CHECK(back.states == m.states);
  CHECK(back.start == m.start);
  CHECK(back.horizon == m.horizon);
  CHECK(back.transitions == m.transitions);
  CHECK(back.observation_probs == m.observation_probs);
  CHECK(back.rewards == m.rewards);
  for (int i = 0; i < m.num_agents(); ++i) {
    CHECK(back.agents[i].observations == m.agents[i].observations);
    CHECK(back.agents[i].actions == m.agents[i].actions);
    CHECK(back.agents[i].initial_actions == m.agents[i].initial_actions);
    CHECK(back.agents[i].actions_by_observation ==
          m.agents[i].actions_by_observation);
  }
}

TEST_CASE("compiled reduction model round trips rational-exact") {
  TilingInstance inst;
  inst.n = 2;
  inst.tiles = {"t0", "t1"};
  inst.horizontal = {{0, 0}, {0, 1}};
  inst.vertical = {{0, 0}, {1, 0}};
  ReductionArtifact art = compile_tiling_to_decpomdp(inst);
  DecPomdp back = model_from_json(model_to_json(art.model));
  CHECK(back.states == art.model.states);
  CHECK(back.transitions == art.model.transitions);
  CHECK(back.observation_probs == art.model.observation_probs);
  CHECK(back.rewards == art.model.rewards);
}

TEST_CASE("probabilities accept numbers and rational strings") {
  json j = model_to_json(make_single_state_model(2));
  j["transitions"][0]["p"] = 1;  // integer instead of "1"
  DecPomdp m = model_from_json(j);
  CHECK(m.transitions.begin()->second.begin()->second == Rational(1));

  j["transitions"][0]["p"] = 0.5;
  m = model_from_json(j);
  CHECK(m.transitions.begin()->second.begin()->second == Rational(1, 2));
}

TEST_CASE("malformed probability string is a parse error") {
  json j = model_to_json(make_single_state_model(2));
  j["transitions"][0]["p"] = "1/0";
  CHECK_THROWS_AS(model_from_json(j), ParseError);
  j["transitions"][0]["p"] = "abc";
  CHECK_THROWS_AS(model_from_json(j), ParseError);
}

TEST_CASE("missing fields and unknown names are parse errors") {
  json j = model_to_json(make_single_state_model(2));
  j["transitions"][0].erase("s2");
  CHECK_THROWS_AS(model_from_json(j), ParseError);

  j = model_to_json(make_single_state_model(2));
  j["start"] = "nope";
  CHECK_THROWS_AS(model_from_json(j), ParseError);
}

TEST_CASE("policy round trip") {
  DecPomdp m = make_coin_guess_model();
  LocalPolicy local;
  local.agent = 0;
  local.decisions[{}] = 0;
  local.decisions[{0}] = 1;
  local.decisions[{1}] = 2;
  JointPolicy p{{local}};
  JointPolicy back = policy_from_json(m, policy_to_json(m, p));
  CHECK(back.locals[0].decisions == p.locals[0].decisions);
}

TEST_CASE("tiling instance round trip and validation") {
  TilingInstance inst;
  inst.n = 4;
  inst.tiles = {"t0", "t1"};
  inst.horizontal = {{0, 1}};
  inst.vertical = {{1, 0}, {0, 0}};
  TilingInstance back = tiling_instance_from_json(tiling_instance_to_json(inst));
  CHECK(back.n == inst.n);
  CHECK(back.tiles == inst.tiles);
  CHECK(back.horizontal == inst.horizontal);
  CHECK(back.vertical == inst.vertical);

  json j = tiling_instance_to_json(inst);
  j["n"] = 3;
  CHECK_THROWS_AS(tiling_instance_from_json(j), ParseError);
  j["n"] = 4;
  j["H"][0][0] = "t9";
  CHECK_THROWS_AS(tiling_instance_from_json(j), ParseError);
}

TEST_CASE("value result serialization") {
  ValueResult v;
  v.expected_total_reward = Rational(-1, 4);
  v.per_epoch_rewards = {Rational(0), Rational(-1, 4)};
  json j = value_result_to_json(v);
  CHECK(j["value"] == "-1/4");
  CHECK(j["per_epoch"][1] == "-1/4");
}
