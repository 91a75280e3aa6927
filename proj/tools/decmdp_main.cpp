#include "decmdp/evaluation.hpp"
#include "decmdp/io.hpp"
#include "decmdp/model.hpp"
#include "decmdp/policy.hpp"
#include "decmdp/reduction.hpp"
#include "decmdp/solver.hpp"
#include "decmdp/tiling.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iostream>

using namespace decmdp;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;   // parse / precondition / validation
constexpr int kExitBudget = 3;  // budget refusal

struct SolveFlags {
  std::string budget = "10000000";
  bool early_exit = false;
  int threads = 1;

  SolveOptions options() const {
    SolveOptions o;
    o.budget = BigInt(budget);
    o.early_exit = early_exit;
    o.threads = threads;
    return o;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--budget", flags.budget, "maximum policy evaluations");
  cmd->add_flag("--early-exit", flags.early_exit,
                "stop at the first policy reaching the threshold");
  cmd->add_option("--threads", flags.threads, "solver worker count");
}

json issues_json(const ValidationReport& report) {
  json out = json::array();
  for (const auto& issue : report.issues) out.push_back(issue.message);
  return out;
}

int run_validate(const std::string& model_path) {
  DecPomdp model = load_model(model_path);
  ValidationReport report = validate_model(model);
  std::cout << json{{"ok", report.ok()}, {"issues", issues_json(report)}}.dump(2)
            << "\n";
  return report.ok() ? kExitOk : kExitError;
}

int run_solve(const std::string& model_path, const std::string& out_path,
              const SolveFlags& flags, const std::string& threshold) {
  DecPomdp model = load_model(model_path);
  SolveOptions options = flags.options();
  if (!threshold.empty()) options.threshold = rational_from_string(threshold);
  SolveResult result = solve_decpomdp_exact(model, options);
  std::cout << json{{"optimal_value", rational_to_string(result.optimal_value)},
                    {"policies_examined", result.policies_examined.str()}}
                   .dump(2)
            << "\n";
  if (!out_path.empty()) save_policy(out_path, model, result.argmax_policy);
  return kExitOk;
}

int run_decide(const std::string& model_path, const std::string& threshold,
               bool allow_long_horizon, const SolveFlags& flags) {
  DecisionInstance instance;
  instance.model = load_model(model_path);
  instance.threshold = rational_from_string(threshold);
  instance.allow_long_horizon = allow_long_horizon;
  bool yes = decide(instance, flags.options());
  std::cout << (yes ? "YES" : "NO") << "\n";
  return kExitOk;
}

int run_evaluate(const std::string& model_path, const std::string& policy_path) {
  DecPomdp model = load_model(model_path);
  JointPolicy policy = load_policy(policy_path, model);
  std::cout << value_result_to_json(exact_value(model, policy)).dump(2) << "\n";
  return kExitOk;
}

int run_simulate(const std::string& model_path, const std::string& policy_path,
                 long episodes, unsigned long long seed) {
  DecPomdp model = load_model(model_path);
  JointPolicy policy = load_policy(policy_path, model);
  SampleEstimate est = simulate(model, policy, episodes, seed);
  std::cout << json{{"mean", est.mean},
                    {"variance", est.variance},
                    {"stderr", est.stderr_mean()},
                    {"episodes", est.episodes}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int run_tiling_solve(const std::string& tiling_path, const std::string& budget) {
  TilingInstance instance = load_tiling_instance(tiling_path);
  auto witness = solve_tiling_bruteforce(instance, BigInt(budget));
  if (!witness) {
    std::cout << "UNSATISFIABLE\n";
    return kExitOk;
  }
  for (int j = 0; j < instance.n; ++j) {
    for (int i = 0; i < instance.n; ++i) {
      if (i) std::cout << " ";
      std::cout << instance.tiles[witness->at(i, j)];
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int run_reduce(const std::string& tiling_path, const std::string& out_path) {
  TilingInstance instance = load_tiling_instance(tiling_path);
  ReductionArtifact artifact = compile_tiling_to_decpomdp(instance);
  save_model(out_path, artifact.model);

  json decode = json::array();
  for (int s = 0; s < artifact.machine.num_states(); ++s) {
    auto f = artifact.flags(s);
    decode.push_back({{"state", artifact.model.states[s]},
                      {"last_bit", f.last_bit},
                      {"bits_chosen", f.bits_chosen},
                      {"equal", f.equal},
                      {"upper_left", f.upper_left},
                      {"horizontal", f.horizontal},
                      {"vertical", f.vertical}});
  }
  json meta{{"n", artifact.n},
            {"T", artifact.model.horizon},
            {"K", rational_to_string(artifact.threshold)},
            {"state_count", artifact.model.num_states()},
            {"flags", decode}};
  save_json(out_path + ".meta.json", meta);
  std::cout << json{{"states", artifact.model.num_states()},
                    {"horizon", artifact.model.horizon}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int run_lift(const std::string& model_path, int agents,
             const std::string& out_path) {
  DecPomdp model = load_model(model_path);
  DecMdp lifted = agents == 3
                      ? lift_to_three_agent_decmdp(model)
                      : lift_pomdp_to_two_agent_decmdp(as_single_agent(model));
  save_model(out_path, lifted.inner);
  std::cout << json{{"agents", lifted.inner.num_agents()}}.dump(2) << "\n";
  return kExitOk;
}

int run_count_policies(const std::string& model_path) {
  DecPomdp model = load_model(model_path);
  auto points = reachable_decision_points(model);
  json per_agent = json::array();
  BigInt joint(1);
  for (int i = 0; i < model.num_agents(); ++i) {
    BigInt c = count_local_policies(points, i);
    per_agent.push_back(c.str());
    joint *= c;
  }
  std::cout << json{{"per_agent", per_agent}, {"joint", joint.str()}}.dump(2)
            << "\n";
  return kExitOk;
}

int run_verify_theorem1(const std::string& tiling_path,
                        const SolveFlags& flags) {
  TilingInstance instance = load_tiling_instance(tiling_path);
  auto witness = solve_tiling_bruteforce(instance, flags.options().budget);
  ReductionArtifact artifact = compile_tiling_to_decpomdp(instance);
  SolveResult result = solve_decpomdp_exact(artifact.model, flags.options());
  bool tiling_exists = witness.has_value();
  bool value_zero = result.optimal_value == Rational(0);
  std::cout << json{{"tiling_exists", tiling_exists},
                    {"optimal_value", rational_to_string(result.optimal_value)},
                    {"verdict", tiling_exists == value_zero ? "AGREE" : "DISAGREE"}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact finite-horizon toolkit for decentralized Markov "
               "decision models"};
  app.require_subcommand(1);

  std::string model_path, policy_path, tiling_path, out_path, threshold = "0";
  long episodes = 1000;
  unsigned long long seed = 0;
  bool allow_long_horizon = false;
  int agents = 3;
  std::string tiling_budget = "100000000";
  SolveFlags flags;

  auto* validate = app.add_subcommand("validate", "check model invariants");
  validate->add_option("--model", model_path)->required();

  auto* solve = app.add_subcommand("solve", "exhaustive optimal joint policy");
  solve->add_option("--model", model_path)->required();
  solve->add_option("--out", out_path, "write the argmax policy here");
  solve->add_option("-K,--threshold", threshold);
  add_solve_flags(solve, flags);

  auto* dec = app.add_subcommand("decide", "is there a policy with value >= K");
  dec->add_option("--model", model_path)->required();
  dec->add_option("-K,--threshold", threshold)->required();
  dec->add_flag("--allow-long-horizon", allow_long_horizon);
  add_solve_flags(dec, flags);

  auto* eval = app.add_subcommand("evaluate", "exact value of a joint policy");
  eval->add_option("--model", model_path)->required();
  eval->add_option("--policy", policy_path)->required();

  auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo estimate");
  sim->add_option("--model", model_path)->required();
  sim->add_option("--policy", policy_path)->required();
  sim->add_option("--episodes", episodes);
  sim->add_option("--seed", seed)->required();

  auto* tsolve = app.add_subcommand("tiling-solve", "brute-force tiling search");
  tsolve->add_option("--tiling", tiling_path)->required();
  tsolve->add_option("--budget", tiling_budget, "node expansion cap");

  auto* reduce = app.add_subcommand("reduce", "compile tiling to DEC-POMDP");
  reduce->add_option("--tiling", tiling_path)->required();
  reduce->add_option("--out", out_path)->required();

  auto* lift = app.add_subcommand("lift", "add a state-observing dummy agent");
  lift->add_option("--model", model_path)->required();
  lift->add_option("--agents", agents, "target agent count (2 or 3)")
      ->check(CLI::IsMember({2, 3}));
  lift->add_option("--out", out_path)->required();

  auto* count = app.add_subcommand("count-policies", "policy space sizes");
  count->add_option("--model", model_path)->required();

  auto* verify = app.add_subcommand(
      "verify-theorem1", "oracle vs compiled-model agreement on one instance");
  verify->add_option("--tiling", tiling_path)->required();
  add_solve_flags(verify, flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate(model_path);
    if (solve->parsed()) return run_solve(model_path, out_path, flags, threshold);
    if (dec->parsed())
      return run_decide(model_path, threshold, allow_long_horizon, flags);
    if (eval->parsed()) return run_evaluate(model_path, policy_path);
    if (sim->parsed()) return run_simulate(model_path, policy_path, episodes, seed);
    if (tsolve->parsed()) return run_tiling_solve(tiling_path, tiling_budget);
    if (reduce->parsed()) return run_reduce(tiling_path, out_path);
    if (lift->parsed()) return run_lift(model_path, agents, out_path);
    if (count->parsed()) return run_count_policies(model_path);
    if (verify->parsed()) return run_verify_theorem1(tiling_path, flags);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
