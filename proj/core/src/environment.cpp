#include "isac/environment.hpp"

#include <algorithm>
#include <cmath>

#include "isac/rf_link.hpp"

namespace isac {

DecodedAction decode_action(const EnvAction& action, const ScenarioConfig& cfg) {
  const int k_users = cfg.num_users;
  if (action.raw.size() != cfg.action_dim()) {
    throw ContractError("decode_action: expected " + std::to_string(cfg.action_dim()) + " entries");
  }
  const Eigen::VectorXd raw = action.raw.cwiseMax(-1.0).cwiseMin(1.0);
  const double step_limit = cfg.uav_vmax * cfg.dt;

  DecodedAction out;
  out.displacement = raw.head<2>() * step_limit;
  const double norm = out.displacement.norm();
  if (norm > step_limit) out.displacement *= step_limit / norm;
  out.target_logit = cfg.target_logit;
  out.user_logits.resize(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) out.user_logits[static_cast<std::size_t>(k)] = raw(2 + k) * cfg.logit_scale;
  out.threshold = raw(2 + k_users) * cfg.logit_scale;
  return out;
}

Vec2 target_next(const Vec2& current, int index, const ScenarioConfig& cfg, Rng& rng) {
  if (index < 0 || index >= cfg.horizon - 1) throw ContractError("target_next: index out of range");
  const int remaining = cfg.horizon - 1 - index;
  const Vec2 drift = (cfg.target_end - current) / static_cast<double>(remaining);
  if (remaining == 1) return cfg.target_end;

  const double drift_norm = drift.norm();
  if (drift_norm >= cfg.target_vmax) return current + drift;

  // A perpendicular kick keeps |drift + w| <= V and never makes the remaining
  // path infeasible: |drift'|^2 = |drift|^2 + |w|^2 / remaining'^2.
  const double radius = std::sqrt(cfg.target_vmax * cfg.target_vmax - drift_norm * drift_norm);
  Vec2 normal;
  if (drift_norm > 0.0) {
    normal = Vec2(-drift.y(), drift.x()) / drift_norm;
  } else {
    std::uniform_real_distribution<double> angle(-constants::kPi, constants::kPi);
    const double a = angle(rng);
    normal = Vec2(std::cos(a), std::sin(a));
  }
  std::uniform_real_distribution<double> kick(-radius, radius);
  return current + drift + kick(rng) * normal;
}

Rng make_rng(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  return Rng(seq);
}

std::vector<Vec2> draw_user_layout(const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::kLayout);
  std::uniform_real_distribution<double> coord(0.0, cfg.arena);
  std::vector<Vec2> users(static_cast<std::size_t>(cfg.num_users));
  for (auto& u : users) {
    const double x = coord(rng);
    const double y = coord(rng);
    u = Vec2(x, y);
  }
  return users;
}

Environment::Environment(ScenarioConfig cfg)
    : cfg_(std::move(cfg)), aoi_(std::max(1, cfg_.num_users)) {
  cfg_.validate();
  array_ = cfg_.array();
  link_ = cfg_.link();
  radar_ = cfg_.radar();
  kf_model_ = cfg_.kf_model();
}

EnvState Environment::reset(std::uint64_t seed) {
  users_ = cfg_.users.empty() ? draw_user_layout(cfg_, seed) : cfg_.users;

  Rng spawn_rng = make_rng(seed, Stream::kSpawn);
  std::normal_distribution<double> spawn(0.0, cfg_.spawn_std);
  const double dx = spawn(spawn_rng);
  const double dy = spawn(spawn_rng);
  uav_ = Vec3(cfg_.target_start.x() + dx, cfg_.target_start.y() + dy, cfg_.uav_altitude);

  Rng traj_rng = make_rng(seed, Stream::kTrajectory);
  trajectory_.assign(1, cfg_.target_start);
  for (int i = 0; i + 1 < cfg_.horizon; ++i) {
    trajectory_.push_back(target_next(trajectory_.back(), i, cfg_, traj_rng));
  }
  target_ = trajectory_.front();

  measurement_rng_ = make_rng(seed, Stream::kMeasurement);
  kf_ = KfState::at_rest(cfg_.target_start, cfg_.init_pos_var, cfg_.init_vel_var);
  aoi_ = AoiState(cfg_.num_users);
  last_sinr_ = Eigen::VectorXd::Zero(cfg_.num_users);
  last_pulse_snr_ = 0.0;
  next_slot_ = 1;
  done_ = false;
  return observe();
}

StepResult Environment::step(const EnvAction& action) {
  if (done_) throw ContractError("step called on a finished episode; reset() first");
  const int n = next_slot_;
  const int k_users = cfg_.num_users;

  // (1) move
  const DecodedAction act = decode_action(action, cfg_);
  uav_.head<2>() += act.displacement;

  // (2)-(4) predict, steer the sensing beam at the prior, schedule and precode users
  const KfState prior = predict(kf_model_, kf_);
  std::vector<CVector> channels;
  channels.reserve(static_cast<std::size_t>(k_users));
  for (const auto& u : users_) channels.push_back(channel_vector(link_, array_, uav_, Vec3(u.x(), u.y(), 0.0)));
  const BeamRequest request{act.user_logits, act.target_logit, act.threshold};
  const BeamPlan plan =
      plan_beams(request, channels, array_, uav_, prior.position(), cfg_.p_max, cfg_.noise_power);

  // (5) target moves
  target_ = trajectory_[static_cast<std::size_t>(n - 1)];
  const Vec3 target3(target_.x(), target_.y(), 0.0);

  // (6)-(7) radar return, gate, filter
  SlotReport report;
  report.slot = n;
  report.displacement = act.displacement;
  report.tx_power = plan.total_power();
  report.sensing_ratio = plan.ratios(0);
  report.af_gain = array_factor_gain(array_, compute_aod(uav_, target3), plan.directions.front());
  report.received_power = radar_received_power(radar_, array_, plan.ratios(0) * cfg_.p_max, report.af_gain,
                                               (uav_ - target3).norm());
  report.pulse_snr = pulse_snr(radar_, report.received_power);
  report.sensing_ok = reliability_gate(radar_, report.pulse_snr);
  if (report.sensing_ok) {
    const Mat2 r = measurement_covariance(radar_, report.pulse_snr);
    const Vec2 z = sample_measurement(measurement_rng_, target_, r);
    kf_ = update(kf_model_, prior, z, r);
  } else {
    kf_ = prior;
  }

  // (8) downlink
  report.sinr = sinr_all_users(channels, plan.user_beams(), cfg_.noise_power);
  report.decoded.resize(static_cast<std::size_t>(k_users));
  for (int k = 0; k < k_users; ++k) report.decoded[static_cast<std::size_t>(k)] = report.sinr(k) >= cfg_.sinr_threshold;
  report.scheduled = plan.scheduled;

  // (9)-(10) ages and reward
  if (n >= 2) aoi_.step(report.sensing_ok, report.decoded);
  report.mean_age = aoi_.average_age();

  last_sinr_ = report.sinr;
  last_pulse_snr_ = report.pulse_snr;
  next_slot_ = n + 1;
  done_ = (n == cfg_.horizon);

  StepResult result;
  result.reward = -report.mean_age;
  result.done = done_;
  result.report = std::move(report);
  result.next_state = observe();
  return result;
}

EnvState Environment::observe() const {
  const StateLayout layout{cfg_.num_users};
  EnvState s;
  s.num_users = cfg_.num_users;
  s.values = Eigen::VectorXd::Zero(layout.dim());
  s.values.segment<2>(StateLayout::kUav) = uav_.head<2>();
  for (int k = 0; k < cfg_.num_users; ++k) {
    const Vec2& u = users_[static_cast<std::size_t>(k)];
    const Vec3 ground(u.x(), u.y(), 0.0);
    const AoD aod = compute_aod(uav_, ground);
    const int base = layout.user(k);
    s.values(base + StateLayout::kDistance) = (uav_ - ground).norm();
    s.values(base + StateLayout::kAzimuth) = aod.azimuth;
    s.values(base + StateLayout::kElevation) = aod.elevation;
    s.values(base + StateLayout::kSinr) = last_sinr_(k);
    s.values(base + StateLayout::kAge) = static_cast<double>(aoi_.ages()[static_cast<std::size_t>(k)]);
  }
  s.values.segment<4>(layout.kf_mean()) = kf_.mean;
  s.values(layout.pulse_snr()) = last_pulse_snr_;
  s.values.segment<4>(layout.cov_diag()) = kf_.cov.diagonal();
  s.values(layout.cov_trace()) = kf_.cov.trace();
  s.values(layout.mean_age()) = aoi_.average_age();
  s.values(layout.progress()) = static_cast<double>(std::min(next_slot_, cfg_.horizon)) / cfg_.horizon;
  return s;
}

Eigen::VectorXd encode_observation(const EnvState& state, const ScenarioConfig& cfg) {
  const StateLayout layout = state.layout();
  const double half = 0.5 * cfg.arena;
  auto db = [](double linear) { return std::clamp(10.0 * std::log10(linear + 1e-6) / 20.0, -3.0, 3.0); };
  auto spread = [](double var) { return std::log10(1.0 + std::max(0.0, var)) / 3.0; };

  Eigen::VectorXd x(layout.dim());
  const auto& v = state.values;
  x(0) = (v(0) - half) / half;
  x(1) = (v(1) - half) / half;
  for (int k = 0; k < state.num_users; ++k) {
    const int b = layout.user(k);
    x(b + StateLayout::kDistance) = v(b + StateLayout::kDistance) / cfg.arena;
    x(b + StateLayout::kAzimuth) = v(b + StateLayout::kAzimuth) / constants::kPi;
    x(b + StateLayout::kElevation) = v(b + StateLayout::kElevation) / (0.5 * constants::kPi);
    x(b + StateLayout::kSinr) = db(v(b + StateLayout::kSinr));
    x(b + StateLayout::kAge) = v(b + StateLayout::kAge) / cfg.horizon;
  }
  const int m = layout.kf_mean();
  x(m) = (v(m) - half) / half;
  x(m + 1) = (v(m + 1) - half) / half;
  x(m + 2) = v(m + 2) / cfg.uav_vmax;
  x(m + 3) = v(m + 3) / cfg.uav_vmax;
  x(layout.pulse_snr()) = db(v(layout.pulse_snr()));
  for (int i = 0; i < 4; ++i) x(layout.cov_diag() + i) = spread(v(layout.cov_diag() + i));
  x(layout.cov_trace()) = spread(v(layout.cov_trace()));
  x(layout.mean_age()) = v(layout.mean_age()) / cfg.horizon;
  x(layout.progress()) = v(layout.progress());
  return x;
}

}  // namespace isac
