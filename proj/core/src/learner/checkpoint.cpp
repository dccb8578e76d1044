#include "isac/learner/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace isac::learner {

using nlohmann::json;

namespace {

json vec_to_json(const Eigen::VectorXd& v) { return json(std::vector<double>(v.data(), v.data() + v.size())); }

Eigen::VectorXd vec_from_json(const json& j, Eigen::Index expected, const char* what) {
  const auto values = j.get<std::vector<double>>();
  if (static_cast<Eigen::Index>(values.size()) != expected) {
    throw ContractError(std::string("checkpoint: wrong length for ") + what);
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), expected);
}

json net_to_json(const Mlp& net) { return {{"widths", net.widths()}, {"params", vec_to_json(net.params())}}; }

void net_from_json(const json& j, Mlp& net, const char* what) {
  if (j.at("widths").get<std::vector<int>>() != net.widths()) {
    throw ContractError(std::string("checkpoint: layer widths differ for ") + what);
  }
  net.params() = vec_from_json(j.at("params"), net.param_count(), what);
}

json adam_to_json(const Adam& opt) {
  return {{"steps", opt.steps()}, {"m", vec_to_json(opt.first_moment())}, {"v", vec_to_json(opt.second_moment())}};
}

void adam_from_json(const json& j, Adam& opt, const char* what) {
  const Eigen::Index n = opt.first_moment().size();
  opt.restore(j.at("steps").get<std::int64_t>(), vec_from_json(j.at("m"), n, what), vec_from_json(j.at("v"), n, what));
}

}  // namespace

std::string checkpoint_to_json(const SacAgent& agent) {
  const SacAgent& a = agent;
  std::ostringstream rng_state;
  rng_state << a.rng();
  json j;
  j["format"] = kCheckpointFormat;
  j["state_dim"] = agent.state_dim();
  j["action_dim"] = agent.action_dim();
  j["sac"] = json::parse(sac_params_to_json(agent.params()));
  j["actor"] = net_to_json(agent.actor().net());
  j["q1"] = net_to_json(agent.q1());
  j["q2"] = net_to_json(agent.q2());
  j["q1_target"] = net_to_json(agent.q1_target());
  j["q2_target"] = net_to_json(agent.q2_target());
  j["log_temperature"] = agent.log_temperature();
  j["optimizers"] = {{"actor", adam_to_json(a.actor_opt())},
                     {"q1", adam_to_json(a.q1_opt())},
                     {"q2", adam_to_json(a.q2_opt())},
                     {"temperature", adam_to_json(a.temp_opt())}};
  j["gradient_steps"] = agent.gradient_steps();
  j["rng"] = rng_state.str();
  return j.dump();
}

SacAgent checkpoint_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object() || j.value("format", std::string()) != kCheckpointFormat) {
    throw ContractError(std::string("checkpoint: expected format tag ") + kCheckpointFormat);
  }
  SacAgent agent(j.at("state_dim").get<int>(), j.at("action_dim").get<int>(),
                 sac_params_from_json(j.at("sac").dump()), 0);
  net_from_json(j.at("actor"), agent.actor().net(), "actor");
  net_from_json(j.at("q1"), agent.q1(), "q1");
  net_from_json(j.at("q2"), agent.q2(), "q2");
  net_from_json(j.at("q1_target"), agent.q1_target(), "q1_target");
  net_from_json(j.at("q2_target"), agent.q2_target(), "q2_target");
  agent.set_log_temperature(j.at("log_temperature").get<double>());
  const json& opt = j.at("optimizers");
  adam_from_json(opt.at("actor"), agent.actor_opt(), "actor optimizer");
  adam_from_json(opt.at("q1"), agent.q1_opt(), "q1 optimizer");
  adam_from_json(opt.at("q2"), agent.q2_opt(), "q2 optimizer");
  adam_from_json(opt.at("temperature"), agent.temp_opt(), "temperature optimizer");
  agent.set_gradient_steps(j.at("gradient_steps").get<std::int64_t>());
  std::istringstream rng_state(j.at("rng").get<std::string>());
  rng_state >> agent.rng();
  return agent;
}

void save_checkpoint(const SacAgent& agent, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  out << checkpoint_to_json(agent);
}

SacAgent load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("checkpoint not found: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return checkpoint_from_json(ss.str());
}

}  // namespace isac::learner
