#include "decmdp/io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>

namespace decmdp {

using nlohmann::json;

namespace {

Rational parse_rational(const json& j, const std::string& field) {
  try {
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    if (j.is_number_integer()) return Rational(BigInt(j.get<long long>()));
    if (j.is_number_float()) return rational_from_double(j.get<double>());
  } catch (const std::invalid_argument& e) {
    throw ParseError("field '" + field + "': " + e.what());
  }
  throw ParseError("field '" + field + "': expected a rational");
}

const json& require(const json& j, const std::string& field) {
  auto it = j.find(field);
  if (it == j.end()) throw ParseError("missing field '" + field + "'");
  return *it;
}

JointAction parse_joint_action(const DecPomdp& model, const json& j,
                               const std::string& field) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(model.num_agents())) {
    throw ParseError("field '" + field + "': expected " +
                     std::to_string(model.num_agents()) + " action names");
  }
  JointAction a;
  for (int i = 0; i < model.num_agents(); ++i) {
    try {
      a.push_back(model.agents[i].action_id(j[i].get<std::string>()));
    } catch (const InputError& e) {
      throw ParseError("field '" + field + "': " + e.what());
    }
  }
  return a;
}

json joint_action_json(const DecPomdp& model, const JointAction& a) {
  json out = json::array();
  for (int i = 0; i < model.num_agents(); ++i) {
    out.push_back(model.agents[i].actions[a[i]]);
  }
  return out;
}

}  // namespace

json model_to_json(const DecPomdp& model) {
  json j;
  j["states"] = model.states;
  j["start"] = model.states[model.start];
  j["horizon"] = model.horizon;

  j["agents"] = json::array();
  for (const AgentSpec& spec : model.agents) {
    json ja;
    ja["observations"] = spec.observations;
    json init = json::array();
    for (int a : spec.initial_actions) init.push_back(spec.actions[a]);
    ja["initial_actions"] = init;
    json by_obs = json::object();
    for (std::size_t o = 0; o < spec.observations.size(); ++o) {
      json acts = json::array();
      for (int a : spec.actions_by_observation[o]) acts.push_back(spec.actions[a]);
      by_obs[spec.observations[o]] = acts;
    }
    ja["actions_by_observation"] = by_obs;
    j["agents"].push_back(ja);
  }

  j["transitions"] = json::array();
  for (const auto& [key, row] : model.transitions) {
    for (const auto& [s2, p] : row) {
      j["transitions"].push_back({{"s", model.states[key.first]},
                                  {"a", joint_action_json(model, key.second)},
                                  {"s2", model.states[s2]},
                                  {"p", rational_to_string(p)}});
    }
  }
  j["observation_probs"] = json::array();
  for (const auto& [key, row] : model.observation_probs) {
    for (const auto& [o, p] : row) {
      json jo = json::array();
      for (int i = 0; i < model.num_agents(); ++i) {
        jo.push_back(model.agents[i].observations[o[i]]);
      }
      j["observation_probs"].push_back(
          {{"a", joint_action_json(model, key.first)},
           {"s2", model.states[key.second]},
           {"o", jo},
           {"p", rational_to_string(p)}});
    }
  }
  j["rewards"] = json::array();
  for (const auto& [key, r] : model.rewards) {
    j["rewards"].push_back({{"s", model.states[key.first]},
                            {"a", joint_action_json(model, key.second)},
                            {"r", rational_to_string(r)}});
  }
  return j;
}

DecPomdp model_from_json(const json& j) {
  DecPomdp model;
  for (const auto& s : require(j, "states")) {
    model.intern_state(s.get<std::string>());
  }
  if (model.states.empty()) throw ParseError("field 'states': empty");
  try {
    model.start = model.state_id(require(j, "start").get<std::string>());
  } catch (const InputError& e) {
    throw ParseError(std::string("field 'start': ") + e.what());
  }
  model.horizon = require(j, "horizon").get<int>();
  if (model.horizon < 1) throw ParseError("field 'horizon': must be positive");

  for (const auto& ja : require(j, "agents")) {
    AgentSpec spec;
    for (const auto& o : require(ja, "observations")) {
      spec.intern_observation(o.get<std::string>());
    }
    for (const auto& a : require(ja, "initial_actions")) {
      spec.initial_actions.push_back(spec.intern_action(a.get<std::string>()));
    }
    const json& by_obs = require(ja, "actions_by_observation");
    // Walk observations in declaration order so the derived action
    // universe is reproducible.
    for (std::size_t o = 0; o < spec.observations.size(); ++o) {
      auto it = by_obs.find(spec.observations[o]);
      if (it == by_obs.end()) {
        throw ParseError("field 'actions_by_observation': missing entry for '" +
                         spec.observations[o] + "'");
      }
      for (const auto& a : *it) {
        spec.actions_by_observation[o].push_back(
            spec.intern_action(a.get<std::string>()));
      }
    }
    model.agents.push_back(std::move(spec));
  }
  if (model.agents.empty()) throw ParseError("field 'agents': empty");

  auto state_of = [&](const json& rec, const char* field) {
    try {
      return model.state_id(require(rec, field).get<std::string>());
    } catch (const InputError& e) {
      throw ParseError(std::string("field '") + field + "': " + e.what());
    }
  };

  for (const auto& rec : require(j, "transitions")) {
    model.add_transition(state_of(rec, "s"),
                         parse_joint_action(model, require(rec, "a"), "a"),
                         state_of(rec, "s2"),
                         parse_rational(require(rec, "p"), "p"));
  }
  for (const auto& rec : require(j, "observation_probs")) {
    JointObservation o;
    const json& jo = require(rec, "o");
    if (!jo.is_array() || jo.size() != static_cast<std::size_t>(model.num_agents())) {
      throw ParseError("field 'o': expected one observation per agent");
    }
    for (int i = 0; i < model.num_agents(); ++i) {
      try {
        o.push_back(model.agents[i].observation_id(jo[i].get<std::string>()));
      } catch (const InputError& e) {
        throw ParseError(std::string("field 'o': ") + e.what());
      }
    }
    model.add_observation(parse_joint_action(model, require(rec, "a"), "a"),
                          state_of(rec, "s2"), o,
                          parse_rational(require(rec, "p"), "p"));
  }
  for (const auto& rec : require(j, "rewards")) {
    model.set_reward(state_of(rec, "s"),
                     parse_joint_action(model, require(rec, "a"), "a"),
                     parse_rational(require(rec, "r"), "r"));
  }
  return model;
}

json policy_to_json(const DecPomdp& model, const JointPolicy& policy) {
  json agents = json::array();
  for (int i = 0; i < model.num_agents(); ++i) {
    const AgentSpec& spec = model.agents[i];
    json entries = json::array();
    for (const auto& [h, a] : policy.locals[i].decisions) {
      json hist = json::array();
      for (int o : h) hist.push_back(spec.observations[o]);
      entries.push_back({{"history", hist}, {"action", spec.actions[a]}});
    }
    agents.push_back(entries);
  }
  return json{{"agents", agents}};
}

JointPolicy policy_from_json(const DecPomdp& model, const json& j) {
  const json& agents = require(j, "agents");
  if (!agents.is_array() ||
      agents.size() != static_cast<std::size_t>(model.num_agents())) {
    throw ParseError("field 'agents': expected one policy per agent");
  }
  JointPolicy policy;
  for (int i = 0; i < model.num_agents(); ++i) {
    const AgentSpec& spec = model.agents[i];
    LocalPolicy local;
    local.agent = i;
    for (const auto& rec : agents[i]) {
      ObservationHistory h;
      for (const auto& o : require(rec, "history")) {
        try {
          h.push_back(spec.observation_id(o.get<std::string>()));
        } catch (const InputError& e) {
          throw ParseError(std::string("field 'history': ") + e.what());
        }
      }
      try {
        local.decisions[h] =
            spec.action_id(require(rec, "action").get<std::string>());
      } catch (const InputError& e) {
        throw ParseError(std::string("field 'action': ") + e.what());
      }
    }
    policy.locals.push_back(std::move(local));
  }
  return policy;
}

json tiling_instance_to_json(const TilingInstance& instance) {
  json j;
  j["n"] = instance.n;
  j["tiles"] = instance.tiles;
  json h = json::array(), v = json::array();
  for (const auto& [a, b] : instance.horizontal) {
    h.push_back({instance.tiles[a], instance.tiles[b]});
  }
  for (const auto& [a, b] : instance.vertical) {
    v.push_back({instance.tiles[a], instance.tiles[b]});
  }
  j["H"] = h;
  j["V"] = v;
  return j;
}

TilingInstance tiling_instance_from_json(const json& j) {
  TilingInstance instance;
  instance.n = require(j, "n").get<int>();
  for (const auto& t : require(j, "tiles")) {
    instance.tiles.push_back(t.get<std::string>());
  }
  if (instance.tiles.empty()) throw ParseError("field 'tiles': empty");
  auto parse_relation = [&](const char* field) {
    std::set<std::pair<int, int>> rel;
    for (const auto& pair : require(j, field)) {
      if (!pair.is_array() || pair.size() != 2) {
        throw ParseError(std::string("field '") + field +
                         "': expected tile pairs");
      }
      try {
        rel.insert({instance.tile_id(pair[0].get<std::string>()),
                    instance.tile_id(pair[1].get<std::string>())});
      } catch (const InputError& e) {
        throw ParseError(std::string("field '") + field + "': " + e.what());
      }
    }
    return rel;
  };
  instance.horizontal = parse_relation("H");
  instance.vertical = parse_relation("V");
  try {
    instance.grid_bits();
  } catch (const InputError& e) {
    throw ParseError(std::string("field 'n': ") + e.what());
  }
  return instance;
}

json value_result_to_json(const ValueResult& result) {
  json per_epoch = json::array();
  for (const auto& r : result.per_epoch_rewards) {
    per_epoch.push_back(rational_to_string(r));
  }
  return json{{"value", rational_to_string(result.expected_total_reward)},
              {"per_epoch", per_epoch}};
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out << j.dump(2) << "\n";
}

DecPomdp load_model(const std::string& path) {
  try {
    return model_from_json(load_json(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_model(const std::string& path, const DecPomdp& model) {
  save_json(path, model_to_json(model));
}

TilingInstance load_tiling_instance(const std::string& path) {
  try {
    return tiling_instance_from_json(load_json(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

JointPolicy load_policy(const std::string& path, const DecPomdp& model) {
  try {
    return policy_from_json(model, load_json(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void save_policy(const std::string& path, const DecPomdp& model,
                 const JointPolicy& policy) {
  save_json(path, policy_to_json(model, policy));
}

}  // namespace decmdp
