#pragma once

#include "decmdp/evaluation.hpp"
#include "decmdp/model.hpp"
#include "decmdp/policy.hpp"
#include "decmdp/tiling.hpp"

#include <nlohmann/json_fwd.hpp>

#include <string>

namespace decmdp {

// Model files carry probabilities as "num/den" strings; plain JSON
// numbers are accepted on input and converted exactly. Round trips are
// bit-exact. Parse failures throw ParseError naming the field.

nlohmann::json model_to_json(const DecPomdp& model);
DecPomdp model_from_json(const nlohmann::json& j);

nlohmann::json policy_to_json(const DecPomdp& model, const JointPolicy& policy);
JointPolicy policy_from_json(const DecPomdp& model, const nlohmann::json& j);

nlohmann::json tiling_instance_to_json(const TilingInstance& instance);
TilingInstance tiling_instance_from_json(const nlohmann::json& j);

nlohmann::json value_result_to_json(const ValueResult& result);

// File helpers; ParseError includes the path on failure.
nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

DecPomdp load_model(const std::string& path);
void save_model(const std::string& path, const DecPomdp& model);
TilingInstance load_tiling_instance(const std::string& path);
JointPolicy load_policy(const std::string& path, const DecPomdp& model);
void save_policy(const std::string& path, const DecPomdp& model,
                 const JointPolicy& policy);

}  // namespace decmdp
