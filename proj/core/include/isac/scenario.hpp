#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isac/array_geometry.hpp"
#include "isac/rf_link.hpp"
#include "isac/tracking.hpp"
#include "isac/types.hpp"

namespace isac {

// Every tunable of one simulated mission. Physical quantities are linear
// (watts, linear gains); dB only appears in the CLI and CSV columns.
// Defaults reproduce the reference setup: 6 users on a 1600 m square, 60 one-second
// slots, 4x4 UPA at 2 GHz, 20 dBm budget, 10 dB decoding threshold, 1 m accuracy.
struct ScenarioConfig {
  int num_users = 6;
  int horizon = 60;
  double dt = 1.0;
  double arena = 1600.0;
  double uav_altitude = 50.0;
  double uav_vmax = 20.0;
  double target_vmax = 15.0;
  Vec2 target_start{350.0, 350.0};
  Vec2 target_end{1150.0, 1150.0};
  double spawn_std = 10.0;

  double p_max = 0.1;
  double carrier_freq = 2.0e9;
  int mx = 4;
  int my = 4;
  double elem_gain = 1.9952623149688795;
  double user_gain = 1.0;
  double noise_power = 1e-12;
  double sinr_threshold = 10.0;

  double rcs = 1.0;
  double bandwidth = 100e6;
  double noise_temp = 290.0;
  double noise_figure = 100.0;
  int pulses_per_slot = 32;
  double accuracy_req = 1.0;
  double epsilon = 1e-12;

  double process_var = 0.25;
  double init_pos_var = 100.0;
  double init_vel_var = 25.0;

  double logit_scale = 5.0;
  double target_logit = 0.0;

  std::uint64_t seed = 100;
  // Fixed user layout; drawn uniformly over the arena per seed when empty.
  std::vector<Vec2> users;

  double wavelength() const { return constants::kSpeedOfLight / carrier_freq; }
  ArrayConfig array() const;
  LinkBudget link() const;
  RadarBudget radar() const;
  KfModel kf_model() const;
  int state_dim() const { return 5 * num_users + 14; }
  int action_dim() const { return num_users + 3; }

  void validate() const;
};

// JSON keys mirror the field names above; missing keys keep their defaults.
ScenarioConfig scenario_from_json(const std::string& text);
std::string scenario_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_scenario(const std::filesystem::path& path);

// A JSON array of [x, y] pairs.
std::vector<Vec2> user_layout_from_json(const std::string& text);
std::vector<Vec2> load_user_layout(const std::filesystem::path& path);

}  // namespace isac
