#include "isac/learner/policy.hpp"

#include <cmath>

namespace isac::learner {

namespace {
constexpr double kHalfLog2Pi = 0.91893853320467274178;
}

SquashedGaussianPolicy::SquashedGaussianPolicy(int state_dim, int action_dim, int hidden, int hidden_layers)
    : action_dim_(action_dim) {
  std::vector<int> widths{state_dim};
  for (int i = 0; i < hidden_layers; ++i) widths.push_back(hidden);
  widths.push_back(2 * action_dim);
  net_ = Mlp(std::move(widths));
}

SquashedGaussianPolicy::Sample SquashedGaussianPolicy::sample(const Eigen::MatrixXd& states,
                                                              const Eigen::MatrixXd& noise) const {
  if (noise.rows() != action_dim_ || noise.cols() != states.cols()) {
    throw ContractError("policy sample: noise must be action_dim x batch");
  }
  Sample s;
  const Eigen::MatrixXd out = net_.forward(states, &s.cache);
  const auto mean = out.topRows(action_dim_);
  const auto raw_log_std = out.bottomRows(action_dim_);

  s.log_std_active = (raw_log_std.array() > log_std_min) && (raw_log_std.array() < log_std_max);
  s.log_std = raw_log_std.cwiseMax(log_std_min).cwiseMin(log_std_max);
  s.std = s.log_std.array().exp();
  s.noise = noise;
  s.action = (mean.array() + s.std.array() * noise.array()).tanh();

  const Eigen::ArrayXXd squash = (1.0 - s.action.array().square() + squash_eps).log();
  const Eigen::ArrayXXd per_dim = -0.5 * noise.array().square() - s.log_std.array() - kHalfLog2Pi - squash;
  s.log_prob = per_dim.colwise().sum().matrix();
  return s;
}

SquashedGaussianPolicy::Sample SquashedGaussianPolicy::sample(const Eigen::MatrixXd& states, Rng& rng) const {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd noise(action_dim_, states.cols());
  for (Eigen::Index j = 0; j < noise.cols(); ++j) {
    for (Eigen::Index i = 0; i < noise.rows(); ++i) noise(i, j) = normal(rng);
  }
  return sample(states, noise);
}

Eigen::MatrixXd SquashedGaussianPolicy::deterministic(const Eigen::MatrixXd& states) const {
  return net_.forward(states).topRows(action_dim_).array().tanh().matrix();
}

void SquashedGaussianPolicy::backward(const Sample& s, const Eigen::MatrixXd& d_action,
                                      const Eigen::RowVectorXd& d_log_prob, Eigen::VectorXd* grad) const {
  const Eigen::ArrayXXd a = s.action.array();
  const Eigen::ArrayXXd one_minus_a2 = 1.0 - a.square();
  // d log_prob / d u = 2 a (1 - a^2) / (1 - a^2 + eps), u = pre-squash sample
  const Eigen::ArrayXXd dlogp_du = 2.0 * a * one_minus_a2 / (one_minus_a2 + squash_eps);
  const Eigen::ArrayXXd d_u =
      d_action.array() * one_minus_a2 + dlogp_du.rowwise() * d_log_prob.array();

  Eigen::MatrixXd d_out(2 * action_dim_, s.action.cols());
  d_out.topRows(action_dim_) = d_u.matrix();
  const Eigen::ArrayXXd d_log_std =
      d_u * s.std.array() * s.noise.array() - (Eigen::ArrayXXd::Ones(a.rows(), a.cols()).rowwise() * d_log_prob.array());
  d_out.bottomRows(action_dim_) = s.log_std_active.select(d_log_std, 0.0).matrix();
  net_.backward(s.cache, d_out, grad);
}

}  // namespace isac::learner
