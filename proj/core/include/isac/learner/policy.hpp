#pragma once

#include "isac/learner/mlp.hpp"

namespace isac::learner {

// tanh-squashed diagonal Gaussian. The trunk emits [mean; log_std] per action
// dimension; log_std is clamped before use.
class SquashedGaussianPolicy {
 public:
  struct Sample {
    Eigen::MatrixXd action;    // d x B, in (-1, 1)
    Eigen::RowVectorXd log_prob;
    // kept for backward()
    Eigen::MatrixXd noise;
    Eigen::MatrixXd log_std;
    Eigen::MatrixXd std;
    Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic> log_std_active;
    MlpCache cache;
  };

  SquashedGaussianPolicy() = default;
  SquashedGaussianPolicy(int state_dim, int action_dim, int hidden, int hidden_layers);

  // Reparameterized sample a = tanh(mean + std * noise) with its log-density,
  // including the -sum log(1 - a^2 + eps) change of variables.
  Sample sample(const Eigen::MatrixXd& states, const Eigen::MatrixXd& noise) const;
  Sample sample(const Eigen::MatrixXd& states, Rng& rng) const;

  // tanh(mean): the evaluation-time action.
  Eigen::MatrixXd deterministic(const Eigen::MatrixXd& states) const;

  // Pushes dL/d(action) and dL/d(log_prob) back through the sampling path.
  void backward(const Sample& s, const Eigen::MatrixXd& d_action, const Eigen::RowVectorXd& d_log_prob,
                Eigen::VectorXd* grad) const;

  int action_dim() const { return action_dim_; }
  Mlp& net() { return net_; }
  const Mlp& net() const { return net_; }

  double log_std_min = -20.0;
  double log_std_max = 2.0;
  double squash_eps = 1e-6;

 private:
  Mlp net_;
  int action_dim_ = 0;
};

}  // namespace isac::learner
