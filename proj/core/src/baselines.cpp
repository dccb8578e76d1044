#include "isac/baselines.hpp"

#include <algorithm>
#include <cmath>

namespace isac {

namespace {

// Raw displacement entries for a horizontal move, clipped to one slot of travel.
Vec2 raw_displacement(const Vec2& move, const ScenarioConfig& cfg) {
  const double limit = cfg.uav_vmax * cfg.dt;
  Vec2 d = move;
  const double norm = d.norm();
  if (norm > limit) d *= limit / norm;
  return d / limit;
}

double to_raw_logit(double logit, const ScenarioConfig& cfg) {
  return std::clamp(logit / cfg.logit_scale, -1.0, 1.0);
}

}  // namespace

EnvAction sags_action(const EnvState& state, const ScenarioConfig& cfg) {
  const int k_users = state.num_users;
  int chosen = 0;
  for (int k = 1; k < k_users; ++k) {
    if (state.user_field(k, StateLayout::kAge) > state.user_field(chosen, StateLayout::kAge)) chosen = k;
  }

  // Horizontal offset to the user from slant range and azimuth.
  const double slant = state.user_field(chosen, StateLayout::kDistance);
  const double azimuth = state.user_field(chosen, StateLayout::kAzimuth);
  const double ground = std::sqrt(std::max(0.0, slant * slant - cfg.uav_altitude * cfg.uav_altitude));
  const Vec2 move = ground * Vec2(std::cos(azimuth), std::sin(azimuth));

  EnvAction a;
  a.raw = Eigen::VectorXd::Constant(cfg.action_dim(), -1.0);
  a.raw.head<2>() = raw_displacement(move, cfg);
  // Chosen user's logit equals the sensing logit -> 50/50 split; everyone
  // else sits below the threshold.
  const double chosen_raw = to_raw_logit(cfg.target_logit, cfg);
  a.raw(2 + chosen) = chosen_raw;
  a.raw(2 + k_users) = chosen_raw > -1.0 ? 0.5 * (chosen_raw - 1.0) : -1.0;
  return a;
}

EnvAction kfrand_action(const EnvState& state, const ScenarioConfig& cfg, Rng& rng, const KfRandParams& params) {
  const Vec4 est = state.kf_mean();
  const Vec2 predicted = est.head<2>() + cfg.dt * est.tail<2>();

  const double radius = cfg.uav_vmax * cfg.dt;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double r = radius * std::sqrt(unit(rng));
  const double theta = 2.0 * constants::kPi * unit(rng);
  const double jx = params.jitter_std * normal(rng);
  const double jy = params.jitter_std * normal(rng);
  const Vec2 waypoint = predicted + r * Vec2(std::cos(theta), std::sin(theta)) + Vec2(jx, jy);

  EnvAction a;
  a.raw = Eigen::VectorXd::Zero(cfg.action_dim());
  a.raw.head<2>() = raw_displacement(waypoint - state.uav(), cfg);
  for (int k = 0; k < state.num_users; ++k) {
    a.raw(2 + k) = to_raw_logit(params.logit_std * normal(rng), cfg);
  }
  a.raw(2 + state.num_users) = 0.0;  // tau = 0: negative logits switch beams off
  return a;
}

EnvAction uniform_random_action(const ScenarioConfig& cfg, Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  EnvAction a;
  a.raw.resize(cfg.action_dim());
  for (Eigen::Index i = 0; i < a.raw.size(); ++i) a.raw(i) = u(rng);
  return a;
}

}  // namespace isac
