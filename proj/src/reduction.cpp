#include "decmdp/reduction.hpp"

#include <map>

namespace decmdp {

namespace {

// Observation ids shared by both agents of the compiled model.
constexpr int kObsBit0 = 0;
constexpr int kObsBit1 = 1;
constexpr int kObsDummy = 2;
constexpr int kObsChoose0 = 3;
constexpr int kObsChoose1 = 4;
constexpr int kObsChooseDummy = 5;
constexpr int kObsFinal = 6;

constexpr int kActNoop = 0;  // tile t is action t+1

// Which agent owns coin flip c (1-based): i1/j1 bits go to agent 0,
// i2/j2 bits to agent 1, alternating within each phase.
int flip_owner(int c, int b) {
  int offset = c <= 2 * b ? c - 1 : c - 2 * b - 1;
  return offset % 2;
}

int observation_for(int agent, int owner, int bit, bool is_choice) {
  if (agent == owner) {
    if (is_choice) return bit ? kObsChoose1 : kObsChoose0;
    return bit ? kObsBit1 : kObsBit0;
  }
  return is_choice ? kObsChooseDummy : kObsDummy;
}

AgentSpec reduction_agent_spec(int num_tiles) {
  AgentSpec spec;
  spec.observations = {"bit0",    "bit1",    "dummy", "choose0",
                       "choose1", "choosedummy", "final"};
  spec.actions = {"noop"};
  std::vector<int> tiles;
  for (int t = 0; t < num_tiles; ++t) {
    tiles.push_back(t + 1);
    spec.actions.push_back("tile" + std::to_string(t));
  }
  spec.initial_actions = {kActNoop};
  spec.actions_by_observation.assign(7, {kActNoop});
  spec.actions_by_observation[kObsChoose0] = tiles;
  spec.actions_by_observation[kObsChoose1] = tiles;
  spec.actions_by_observation[kObsChooseDummy] = tiles;
  return spec;
}

}  // namespace

ReductionArtifact compile_tiling_to_decpomdp(const TilingInstance& instance) {
  int b = instance.grid_bits();
  int k = instance.num_tiles();
  if (k < 1) throw InputError("tiling instance declares no tiles");

  ReductionArtifact art;
  art.n = instance.n;
  art.grid_bits = b;
  art.threshold = Rational(0);
  art.machine = build_product_machine(instance.n);

  DecPomdp& model = art.model;
  for (int s = 0; s < art.machine.num_states(); ++s) {
    model.intern_state("q" + std::to_string(s));
  }
  art.final_state = model.intern_state("final");
  model.start = 0;  // product start is discovered first
  model.horizon = 4 * b + 1;
  model.agents = {reduction_agent_spec(k), reduction_agent_spec(k)};

  const Rational half(1, 2), one(1);
  const JointAction noop{kActNoop, kActNoop};

  for (int s = 0; s < art.machine.num_states(); ++s) {
    auto f = art.machine.flags(s);
    if (f.bits_chosen < 4 * b) {
      // Coin flip: the two successors differ at least in the last-bit
      // component, so the row is two distinct branches of 1/2.
      model.add_transition(s, noop, art.machine.next[s][0], half);
      model.add_transition(s, noop, art.machine.next[s][1], half);
    } else {
      // Tile choice: deterministic to final under every joint tile pair;
      // reward -1 unless all four flag-guarded conditions hold.
      for (int t1 = 0; t1 < k; ++t1) {
        for (int t2 = 0; t2 < k; ++t2) {
          JointAction a{t1 + 1, t2 + 1};
          model.add_transition(s, a, art.final_state, one);
          bool ok = true;
          if (f.equal && t1 != t2) ok = false;
          if (f.upper_left && t1 != 0) ok = false;
          if (f.horizontal && !instance.horizontal.count({t1, t2})) ok = false;
          if (f.vertical && !instance.vertical.count({t1, t2})) ok = false;
          if (!ok) model.set_reward(s, a, Rational(-1));
        }
      }
    }
  }
  for (int t1 = 0; t1 < k; ++t1) {
    for (int t2 = 0; t2 < k; ++t2) {
      model.add_observation({t1 + 1, t2 + 1}, art.final_state,
                            {kObsFinal, kObsFinal}, one);
    }
  }
  model.add_transition(art.final_state, noop, art.final_state, one);
  model.add_observation(noop, art.final_state, {kObsFinal, kObsFinal}, one);

  // Observations are a deterministic function of the successor state:
  // the owner of the just-chosen bit sees it (tagged on the final flip),
  // the other agent sees the dummy symbol.
  for (int v = 0; v < art.machine.num_states(); ++v) {
    auto f = art.machine.flags(v);
    if (f.bits_chosen == 0) continue;  // the start state is never entered
    int owner = flip_owner(f.bits_chosen, b);
    bool is_choice = f.bits_chosen == 4 * b;
    JointObservation o{observation_for(0, owner, f.last_bit, is_choice),
                       observation_for(1, owner, f.last_bit, is_choice)};
    model.add_observation(noop, v, o, one);
  }

  return art;
}

LocalPolicy tiling_to_local_policy(const TilingInstance& instance,
                                   const Tiling& f,
                                   const ReductionArtifact& artifact,
                                   int agent) {
  if (agent < 0 || agent > 1) throw InputError("agent must be 0 or 1");
  int b = artifact.grid_bits;
  LocalPolicy policy;
  policy.agent = agent;

  // Walk every coin word; each prefix projects to one local history.
  int total = 4 * b;
  for (long long w = 0; w < (1LL << total); ++w) {
    std::vector<int> word(total);
    for (int c = 0; c < total; ++c) word[c] = static_cast<int>((w >> c) & 1);
    ObservationHistory history;
    policy.decisions[history] = kActNoop;  // empty history, first epoch
    for (int c = 1; c <= total; ++c) {
      int owner = flip_owner(c, b);
      history.push_back(
          observation_for(agent, owner, word[c - 1], c == total));
      if (c < total) policy.decisions[history] = kActNoop;
    }
    GridPositions pos = decode_positions(word, artifact.n);
    int i = agent == 0 ? pos.i1 : pos.i2;
    int j = agent == 0 ? pos.j1 : pos.j2;
    int tile = f.at(i, j);
    if (tile < 0 || tile >= instance.num_tiles()) {
      throw InputError("tiling assigns an undeclared tile");
    }
    policy.decisions[history] = tile + 1;
  }
  return policy;
}

JointPolicy tiling_to_joint_policy(const TilingInstance& instance,
                                   const Tiling& f,
                                   const ReductionArtifact& artifact) {
  return JointPolicy{{tiling_to_local_policy(instance, f, artifact, 0),
                      tiling_to_local_policy(instance, f, artifact, 1)}};
}

namespace {

DecMdp lift_with_state_observer(const DecPomdp& model) {
  DecPomdp lifted;
  lifted.states = model.states;
  lifted.start = model.start;
  lifted.horizon = model.horizon;
  lifted.agents = model.agents;

  AgentSpec observer;
  observer.observations = model.states;  // one symbol per state
  observer.actions = {"noop"};
  observer.initial_actions = {0};
  observer.actions_by_observation.assign(model.states.size(), {0});
  lifted.agents.push_back(observer);

  for (const auto& [key, row] : model.transitions) {
    JointAction a = key.second;
    a.push_back(0);
    for (const auto& [s2, p] : row) lifted.add_transition(key.first, a, s2, p);
  }
  for (const auto& [key, r] : model.rewards) {
    JointAction a = key.second;
    a.push_back(0);
    lifted.set_reward(key.first, a, r);
  }
  for (const auto& [key, row] : model.observation_probs) {
    JointAction a = key.first;
    a.push_back(0);
    for (const auto& [o, p] : row) {
      JointObservation lo = o;
      lo.push_back(key.second);  // the observer sees the successor state
      lifted.add_observation(a, key.second, lo, p);
    }
  }

  auto obs = check_joint_observability(lifted);
  if (!obs.witness) {
    throw InputError("lifted model unexpectedly fails joint observability");
  }
  return DecMdp{std::move(lifted), std::move(*obs.witness)};
}

}  // namespace

DecMdp lift_to_three_agent_decmdp(const DecPomdp& model) {
  if (model.num_agents() != 2) {
    throw ArityError("lift_to_three_agent_decmdp requires a 2-agent model");
  }
  return lift_with_state_observer(model);
}

DecMdp lift_pomdp_to_two_agent_decmdp(const Pomdp& model) {
  if (model.inner.num_agents() != 1) {
    throw ArityError("lift_pomdp_to_two_agent_decmdp requires m=1");
  }
  return lift_with_state_observer(model.inner);
}

JointPolicy extend_with_dummy_agent(const DecPomdp& lifted,
                                    const JointPolicy& base) {
  int dummy = lifted.num_agents() - 1;
  if (static_cast<int>(base.locals.size()) != dummy) {
    throw ArityError("policy arity does not match the pre-lift model");
  }
  JointPolicy padded = base;
  LocalPolicy observer;
  observer.agent = dummy;
  auto points = reachable_decision_points(lifted);
  for (const auto& p : points.per_agent[dummy]) {
    observer.decisions[p.history] = p.actions.at(0);
  }
  padded.locals.push_back(std::move(observer));
  return padded;
}

}  // namespace decmdp
