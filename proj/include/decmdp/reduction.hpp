#pragma once

#include "decmdp/dfa.hpp"
#include "decmdp/model.hpp"
#include "decmdp/policy.hpp"
#include "decmdp/tiling.hpp"

namespace decmdp {

// The compiled two-agent DEC-POMDP for a tiling instance. The model's
// states are the reachable product-machine states plus one absorbing
// final state; `machine` keeps the component decoding available.
struct ReductionArtifact {
  DecPomdp model;
  Rational threshold;  // K = 0
  ProductMachine machine;
  int final_state = 0;  // model state id of the absorbing state
  int n = 2;
  int grid_bits = 1;

  // Component flags for a non-final model state.
  ProductMachine::Flags flags(int model_state) const {
    return machine.flags(model_state);
  }
};

// The hardness construction: 4*log2(n) coin-flip epochs choosing two
// grid positions bit by bit, then one tile-choice epoch where each agent
// commits a tile for the position it observed. Reward is 0 when the
// four compatibility conditions hold, -1 otherwise. Horizon is
// 4*log2(n) + 1 and the decision threshold is 0.
ReductionArtifact compile_tiling_to_decpomdp(const TilingInstance& instance);

// The local policy induced by a tiling: noop through the position
// phase; at the tile-choice epoch, decode the agent's observed bits into
// (i, j) and play f(i, j).
LocalPolicy tiling_to_local_policy(const TilingInstance& instance,
                                   const Tiling& f,
                                   const ReductionArtifact& artifact,
                                   int agent);

// Both agents following the tiling.
JointPolicy tiling_to_joint_policy(const TilingInstance& instance,
                                   const Tiling& f,
                                   const ReductionArtifact& artifact);

// Adds a state-observing dummy agent with a single action: joint
// observability holds afterwards and every policy keeps its value.
DecMdp lift_to_three_agent_decmdp(const DecPomdp& model);   // 2 -> 3 agents
DecMdp lift_pomdp_to_two_agent_decmdp(const Pomdp& model);  // 1 -> 2 agents

// Pads a policy of the pre-lift model with the dummy agent's forced
// decisions so it can be evaluated on the lifted model.
JointPolicy extend_with_dummy_agent(const DecPomdp& lifted,
                                    const JointPolicy& base);

}  // namespace decmdp
