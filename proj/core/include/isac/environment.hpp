#pragma once

#include <cstdint>
#include <vector>

#include "isac/aoi.hpp"
#include "isac/beam_control.hpp"
#include "isac/scenario.hpp"
#include "isac/tracking.hpp"
#include "isac/types.hpp"

namespace isac {

// Offsets into the flat state vector (dimension 5K + 14):
//   UAV x, y | per user: distance, azimuth, elevation, SINR, AoI |
//   KF mean (4), pulse SNR | KF cov diagonal (4), trace | mean AoI, progress
struct StateLayout {
  int num_users;

  static constexpr int kUav = 0;
  static constexpr int kUserStride = 5;
  static constexpr int kDistance = 0;
  static constexpr int kAzimuth = 1;
  static constexpr int kElevation = 2;
  static constexpr int kSinr = 3;
  static constexpr int kAge = 4;

  int user(int k) const { return 2 + kUserStride * k; }
  int kf_mean() const { return 2 + kUserStride * num_users; }
  int pulse_snr() const { return kf_mean() + 4; }
  int cov_diag() const { return kf_mean() + 5; }
  int cov_trace() const { return kf_mean() + 9; }
  int mean_age() const { return kf_mean() + 10; }
  int progress() const { return kf_mean() + 11; }
  int dim() const { return kUserStride * num_users + 14; }
};

struct EnvState {
  Eigen::VectorXd values;
  int num_users = 0;

  StateLayout layout() const { return StateLayout{num_users}; }
  Vec2 uav() const { return values.segment<2>(StateLayout::kUav); }
  double user_field(int k, int field) const { return values(layout().user(k) + field); }
  Vec4 kf_mean() const { return values.segment<4>(layout().kf_mean()); }
  double pulse_snr() const { return values(layout().pulse_snr()); }
  double mean_age() const { return values(layout().mean_age()); }
  double progress() const { return values(layout().progress()); }
};

// Raw policy output in [-1, 1]^(K+3): displacement (2), user logits (K), threshold (1).
struct EnvAction {
  Eigen::VectorXd raw;
};

struct DecodedAction {
  Vec2 displacement;
  double target_logit = 0.0;
  std::vector<double> user_logits;
  double threshold = 0.0;
};

// Entries are clamped to [-1, 1]; the displacement is scaled by v_max dt and then
// norm-clipped to v_max dt. Logits and threshold scale by the configured logit scale.
DecodedAction decode_action(const EnvAction& action, const ScenarioConfig& cfg);

// Target waypoint for trajectory index `index + 1`, given the position at `index`
// (0-based, index < N - 1). Drift (p_end - p) / (N - 1 - index) plus a perturbation
// perpendicular to the drift with norm <= sqrt(V^2 - |drift|^2); the last step
// lands on p_end.
Vec2 target_next(const Vec2& current, int index, const ScenarioConfig& cfg, Rng& rng);

// Everything that happened inside one slot, for metrics and assertions.
struct SlotReport {
  int slot = 0;
  Vec2 displacement = Vec2::Zero();
  double tx_power = 0.0;
  double sensing_ratio = 0.0;
  double af_gain = 0.0;
  double received_power = 0.0;
  double pulse_snr = 0.0;
  bool sensing_ok = false;
  std::vector<int> scheduled;
  Eigen::VectorXd sinr;
  std::vector<bool> decoded;
  double mean_age = 0.0;
};

struct StepResult {
  EnvState next_state;
  double reward = 0.0;
  bool done = false;
  SlotReport report;
};

// Finite-horizon ISAC mission. Slot n = 1..N is executed by the n-th call to step();
// slot 1 pins the AoI initial condition (g = 1, all ages 1), later slots follow the
// recursion. The reward of slot n is -mean_k age_k[n], so an episode returns
// -sum_n mean AoI.
class Environment {
 public:
  explicit Environment(ScenarioConfig cfg);

  // Draws the user layout (unless fixed) and UAV spawn from `seed`; the target
  // starts at target_start. Returns the observation used to decide slot 1.
  EnvState reset(std::uint64_t seed);
  StepResult step(const EnvAction& action);

  // Observation built from the current internals; progress = decision slot / N.
  EnvState observe() const;

  const ScenarioConfig& config() const { return cfg_; }
  int state_dim() const { return cfg_.state_dim(); }
  int action_dim() const { return cfg_.action_dim(); }
  int slot() const { return next_slot_; }
  bool done() const { return done_; }
  const Vec3& uav_position() const { return uav_; }
  const Vec2& target_position() const { return target_; }
  // Full target path for the episode, drawn at reset; index n - 1 is slot n.
  const std::vector<Vec2>& target_trajectory() const { return trajectory_; }
  const std::vector<Vec2>& users() const { return users_; }
  const KfState& kf() const { return kf_; }
  const AoiState& aoi() const { return aoi_; }

 private:
  ScenarioConfig cfg_;
  ArrayConfig array_;
  LinkBudget link_;
  RadarBudget radar_;
  KfModel kf_model_;

  Rng measurement_rng_;
  std::vector<Vec2> users_;
  std::vector<Vec2> trajectory_;
  Vec3 uav_ = Vec3::Zero();
  Vec2 target_ = Vec2::Zero();
  KfState kf_;
  AoiState aoi_;
  Eigen::VectorXd last_sinr_;
  double last_pulse_snr_ = 0.0;
  int next_slot_ = 1;
  bool done_ = true;
};

// Fixed per-feature scaling of the raw state into roughly unit ranges for the
// networks. Same dimension and ordering as the state vector.
Eigen::VectorXd encode_observation(const EnvState& state, const ScenarioConfig& cfg);

// Independent streams derived from one episode seed.
enum class Stream : std::uint32_t { kLayout = 0, kSpawn = 1, kTrajectory = 2, kMeasurement = 3, kPolicy = 4 };
Rng make_rng(std::uint64_t seed, Stream stream);

// Uniform user layout over [0, arena]^2 drawn from the layout stream of `seed`.
std::vector<Vec2> draw_user_layout(const ScenarioConfig& cfg, std::uint64_t seed);

}  // namespace isac
