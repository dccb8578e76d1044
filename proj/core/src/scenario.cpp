#include "isac/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

namespace isac {

using nlohmann::json;

ArrayConfig ScenarioConfig::array() const {
  return ArrayConfig::half_wavelength(mx, my, carrier_freq, elem_gain);
}

LinkBudget ScenarioConfig::link() const {
  LinkBudget b;
  b.elem_gain = elem_gain;
  b.user_gain = user_gain;
  b.wavelength = wavelength();
  b.noise_power = noise_power;
  b.sinr_threshold = sinr_threshold;
  return b;
}

RadarBudget ScenarioConfig::radar() const {
  RadarBudget r;
  r.rcs = rcs;
  r.bandwidth = bandwidth;
  r.noise_temp = noise_temp;
  r.noise_figure = noise_figure;
  r.pulses_per_slot = pulses_per_slot;
  r.accuracy_req = accuracy_req;
  r.epsilon = epsilon;
  return r;
}

KfModel ScenarioConfig::kf_model() const { return KfModel{dt, process_var}; }

void ScenarioConfig::validate() const {
  if (num_users < 1) throw ContractError("num_users must be >= 1");
  if (horizon < 2) throw ContractError("horizon must be >= 2");
  if (!(dt > 0.0) || !(arena > 0.0) || !(uav_altitude > 0.0) || !(uav_vmax > 0.0) ||
      !(target_vmax > 0.0) || !(p_max > 0.0) || !(carrier_freq > 0.0) || spawn_std < 0.0) {
    throw ContractError("scenario geometry, speeds and power must be positive");
  }
  if (!(process_var > 0.0) || !(init_pos_var > 0.0) || !(init_vel_var > 0.0) || !(logit_scale > 0.0)) {
    throw ContractError("filter variances and logit scale must be positive");
  }
  if (!users.empty() && static_cast<int>(users.size()) != num_users) {
    throw ContractError("fixed user layout must list exactly num_users positions");
  }
  array().validate();
  link().validate();
  radar().validate();
}

namespace {

Vec2 vec2_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ContractError("expected an [x, y] pair");
  return Vec2(j.at(0).get<double>(), j.at(1).get<double>());
}

std::vector<Vec2> layout_from(const json& j) {
  if (!j.is_array()) throw ContractError("user layout must be a JSON array of [x, y] pairs");
  std::vector<Vec2> out;
  for (const auto& p : j) out.push_back(vec2_from(p));
  return out;
}

template <typename T>
void read(const json& j, const char* key, T& field) {
  if (auto it = j.find(key); it != j.end()) field = it->get<T>();
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

ScenarioConfig scenario_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw ContractError("scenario document must be a JSON object");
  static const char* const kKnown[] = {
      "num_users", "horizon", "dt", "arena", "uav_altitude", "uav_vmax", "target_vmax",
      "target_start", "target_end", "spawn_std", "p_max", "carrier_freq", "mx", "my", "elem_gain",
      "user_gain", "noise_power", "sinr_threshold", "rcs", "bandwidth", "noise_temp", "noise_figure",
      "pulses_per_slot", "accuracy_req", "epsilon", "process_var", "init_pos_var", "init_vel_var",
      "logit_scale", "target_logit", "seed", "users"};
  for (const auto& item : j.items()) {
    if (std::find(std::begin(kKnown), std::end(kKnown), item.key()) == std::end(kKnown)) {
      throw ContractError("unknown scenario key '" + item.key() + "'");
    }
  }

  ScenarioConfig c;
  read(j, "num_users", c.num_users);
  read(j, "horizon", c.horizon);
  read(j, "dt", c.dt);
  read(j, "arena", c.arena);
  read(j, "uav_altitude", c.uav_altitude);
  read(j, "uav_vmax", c.uav_vmax);
  read(j, "target_vmax", c.target_vmax);
  if (j.contains("target_start")) c.target_start = vec2_from(j["target_start"]);
  if (j.contains("target_end")) c.target_end = vec2_from(j["target_end"]);
  read(j, "spawn_std", c.spawn_std);
  read(j, "p_max", c.p_max);
  read(j, "carrier_freq", c.carrier_freq);
  read(j, "mx", c.mx);
  read(j, "my", c.my);
  read(j, "elem_gain", c.elem_gain);
  read(j, "user_gain", c.user_gain);
  read(j, "noise_power", c.noise_power);
  read(j, "sinr_threshold", c.sinr_threshold);
  read(j, "rcs", c.rcs);
  read(j, "bandwidth", c.bandwidth);
  read(j, "noise_temp", c.noise_temp);
  read(j, "noise_figure", c.noise_figure);
  read(j, "pulses_per_slot", c.pulses_per_slot);
  read(j, "accuracy_req", c.accuracy_req);
  read(j, "epsilon", c.epsilon);
  read(j, "process_var", c.process_var);
  read(j, "init_pos_var", c.init_pos_var);
  read(j, "init_vel_var", c.init_vel_var);
  read(j, "logit_scale", c.logit_scale);
  read(j, "target_logit", c.target_logit);
  read(j, "seed", c.seed);
  if (j.contains("users")) c.users = layout_from(j["users"]);
  c.validate();
  return c;
}

std::string scenario_to_json(const ScenarioConfig& c) {
  json j;
  j["num_users"] = c.num_users;
  j["horizon"] = c.horizon;
  j["dt"] = c.dt;
  j["arena"] = c.arena;
  j["uav_altitude"] = c.uav_altitude;
  j["uav_vmax"] = c.uav_vmax;
  j["target_vmax"] = c.target_vmax;
  j["target_start"] = {c.target_start.x(), c.target_start.y()};
  j["target_end"] = {c.target_end.x(), c.target_end.y()};
  j["spawn_std"] = c.spawn_std;
  j["p_max"] = c.p_max;
  j["carrier_freq"] = c.carrier_freq;
  j["mx"] = c.mx;
  j["my"] = c.my;
  j["elem_gain"] = c.elem_gain;
  j["user_gain"] = c.user_gain;
  j["noise_power"] = c.noise_power;
  j["sinr_threshold"] = c.sinr_threshold;
  j["rcs"] = c.rcs;
  j["bandwidth"] = c.bandwidth;
  j["noise_temp"] = c.noise_temp;
  j["noise_figure"] = c.noise_figure;
  j["pulses_per_slot"] = c.pulses_per_slot;
  j["accuracy_req"] = c.accuracy_req;
  j["epsilon"] = c.epsilon;
  j["process_var"] = c.process_var;
  j["init_pos_var"] = c.init_pos_var;
  j["init_vel_var"] = c.init_vel_var;
  j["logit_scale"] = c.logit_scale;
  j["target_logit"] = c.target_logit;
  j["seed"] = c.seed;
  if (!c.users.empty()) {
    json users = json::array();
    for (const auto& u : c.users) users.push_back({u.x(), u.y()});
    j["users"] = users;
  }
  return j.dump(2);
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  return scenario_from_json(slurp(path));
}

std::vector<Vec2> user_layout_from_json(const std::string& text) {
  return layout_from(json::parse(text));
}

std::vector<Vec2> load_user_layout(const std::filesystem::path& path) {
  return user_layout_from_json(slurp(path));
}

}  // namespace isac
