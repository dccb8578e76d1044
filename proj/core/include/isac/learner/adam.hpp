#pragma once

#include <cstdint>

#include <Eigen/Core>

namespace isac::learner {

// Adam with bias correction (Kingma & Ba defaults).
class Adam {
 public:
  Adam() = default;
  Adam(Eigen::Index size, double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  // params <- params - lr * m_hat / (sqrt(v_hat) + eps)
  void step(Eigen::VectorXd& params, const Eigen::VectorXd& grad);

  double lr() const { return lr_; }
  std::int64_t steps() const { return t_; }
  const Eigen::VectorXd& first_moment() const { return m_; }
  const Eigen::VectorXd& second_moment() const { return v_; }
  void restore(std::int64_t steps, Eigen::VectorXd m, Eigen::VectorXd v);

 private:
  double lr_ = 3e-4;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  std::int64_t t_ = 0;
  Eigen::VectorXd m_;
  Eigen::VectorXd v_;
};

}  // namespace isac::learner
