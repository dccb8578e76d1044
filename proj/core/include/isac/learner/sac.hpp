#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "isac/environment.hpp"
#include "isac/learner/adam.hpp"
#include "isac/learner/mlp.hpp"
#include "isac/learner/policy.hpp"
#include "isac/learner/replay_buffer.hpp"

namespace isac::learner {

struct SacParams {
  double gamma = 0.99;
  double lr_actor = 3e-4;
  double lr_critic = 3e-4;
  double lr_temp = 3e-4;
  double tau_soft = 0.01;
  int batch_size = 256;
  int update_interval = 1;
  int grad_repeat = 1;
  std::optional<double> target_entropy;  // defaults to -action_dim
  double init_temperature = 0.2;
  std::size_t buffer_capacity = 1'000'000;
  int hidden_width = 256;
  int hidden_layers = 2;
  double log_std_min = -20.0;
  double log_std_max = 2.0;
  double squash_eps = 1e-6;

  void validate() const;
};

SacParams sac_params_from_json(const std::string& text);
std::string sac_params_to_json(const SacParams& p);

// y = r + gamma (1 - done) [min(q1, q2) - temperature * log_prob], all per sample.
Eigen::RowVectorXd td_target(double gamma, const Eigen::RowVectorXd& rewards, const Eigen::RowVectorXd& done,
                             const Eigen::RowVectorXd& q1_next, const Eigen::RowVectorXd& q2_next,
                             const Eigen::RowVectorXd& log_prob_next, double temperature);

// target <- tau * source + (1 - tau) * target
void soft_update(Eigen::VectorXd& target, const Eigen::VectorXd& source, double tau);

// Standard-normal draws used by one loss evaluation: `next` for a' at s', `current`
// for the re-sampled action at s. Fixing them makes the losses deterministic
// functions of the parameters.
struct LossNoise {
  Eigen::MatrixXd next;
  Eigen::MatrixXd current;
};

struct SacLosses {
  double critic = 0.0;
  double actor = 0.0;
  double temperature = 0.0;
  Eigen::VectorXd grad_q1;
  Eigen::VectorXd grad_q2;
  Eigen::VectorXd grad_actor;
  double grad_log_temperature = 0.0;
  Eigen::RowVectorXd td_target;
  Eigen::RowVectorXd log_prob;  // of the re-sampled actions
};

class SacAgent {
 public:
  SacAgent(int state_dim, int action_dim, SacParams params, std::uint64_t seed);

  // Action in (-1, 1)^d for one encoded observation.
  Eigen::VectorXd act(const Eigen::VectorXd& obs, bool deterministic);

  LossNoise draw_noise(Eigen::Index batch_size);
  SacLosses compute_losses(const Batch& batch, const LossNoise& noise) const;
  // One Adam step on every network and the log-temperature.
  void apply(const SacLosses& losses);
  void soft_update_targets();
  // grad_repeat rounds of sample / losses / apply, then one soft update.
  // Returns false (and does nothing) while the buffer holds fewer than batch_size items.
  bool update();

  Eigen::RowVectorXd q_values(const Mlp& critic, const Eigen::MatrixXd& states,
                              const Eigen::MatrixXd& actions) const;

  const SacParams& params() const { return params_; }
  int state_dim() const { return state_dim_; }
  int action_dim() const { return action_dim_; }
  double target_entropy() const { return target_entropy_; }
  double temperature() const;
  double log_temperature() const { return log_temp_(0); }
  void set_log_temperature(double v) { log_temp_(0) = v; }

  SquashedGaussianPolicy& actor() { return actor_; }
  const SquashedGaussianPolicy& actor() const { return actor_; }
  Mlp& q1() { return q1_; }
  Mlp& q2() { return q2_; }
  Mlp& q1_target() { return q1_target_; }
  Mlp& q2_target() { return q2_target_; }
  const Mlp& q1() const { return q1_; }
  const Mlp& q2() const { return q2_; }
  const Mlp& q1_target() const { return q1_target_; }
  const Mlp& q2_target() const { return q2_target_; }
  Adam& actor_opt() { return actor_opt_; }
  Adam& q1_opt() { return q1_opt_; }
  Adam& q2_opt() { return q2_opt_; }
  Adam& temp_opt() { return temp_opt_; }
  const Adam& actor_opt() const { return actor_opt_; }
  const Adam& q1_opt() const { return q1_opt_; }
  const Adam& q2_opt() const { return q2_opt_; }
  const Adam& temp_opt() const { return temp_opt_; }
  const Rng& rng() const { return rng_; }
  ReplayBuffer& buffer() { return buffer_; }
  Rng& rng() { return rng_; }
  std::int64_t gradient_steps() const { return gradient_steps_; }
  void set_gradient_steps(std::int64_t n) { gradient_steps_ = n; }

 private:
  SacParams params_;
  int state_dim_;
  int action_dim_;
  double target_entropy_;
  SquashedGaussianPolicy actor_;
  Mlp q1_, q2_, q1_target_, q2_target_;
  Eigen::VectorXd log_temp_;
  Adam actor_opt_, q1_opt_, q2_opt_, temp_opt_;
  ReplayBuffer buffer_;
  Rng rng_;
  std::int64_t gradient_steps_ = 0;
};

struct TrainResult {
  std::vector<double> returns;
  std::int64_t env_steps = 0;
  std::int64_t gradient_steps = 0;
};

using EpisodeCallback = std::function<void(int episode, double episode_return)>;

// Episode e resets with seed seed_base + e. Observations pass through
// encode_observation before reaching the networks.
TrainResult train(SacAgent& agent, Environment& env, int episodes, std::uint64_t seed_base,
                  const EpisodeCallback& on_episode = {});

}  // namespace isac::learner
