#include "isac/tracking.hpp"

#include <Eigen/Cholesky>

namespace isac {

Mat4 KfModel::transition() const {
  Mat4 f = Mat4::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  return f;
}

Mat4 KfModel::process_noise() const { return process_var * Mat4::Identity(); }

Eigen::Matrix<double, 2, 4> KfModel::observation() {
  Eigen::Matrix<double, 2, 4> h = Eigen::Matrix<double, 2, 4>::Zero();
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  return h;
}

KfState KfState::at_rest(const Vec2& position, double pos_var, double vel_var) {
  KfState s;
  s.mean << position.x(), position.y(), 0.0, 0.0;
  s.cov = Vec4(pos_var, pos_var, vel_var, vel_var).asDiagonal();
  return s;
}

KfState predict(const KfModel& model, const KfState& state) {
  const Mat4 f = model.transition();
  KfState prior;
  prior.mean = f * state.mean;
  prior.cov = f * state.cov * f.transpose() + model.process_noise();
  prior.cov = 0.5 * (prior.cov + prior.cov.transpose()).eval();
  return prior;
}

KfState update(const KfModel& /*model*/, const KfState& prior, const Vec2& z, const Mat2& R) {
  const auto h = KfModel::observation();
  const Mat2 s = h * prior.cov * h.transpose() + R;
  const Eigen::LLT<Mat2> llt(s);
  if (llt.info() != Eigen::Success) {
    throw ContractError("kalman update: innovation covariance is not positive definite");
  }
  // K = C H^T S^{-1}, solved as S K^T = H C (S and C symmetric).
  const Eigen::Matrix<double, 4, 2> gain = llt.solve(h * prior.cov).transpose();

  KfState post;
  post.mean = prior.mean + gain * (z - h * prior.mean);
  post.cov = (Mat4::Identity() - gain * h) * prior.cov;
  post.cov = 0.5 * (post.cov + post.cov.transpose()).eval();
  return post;
}

KfState gated_step(const KfModel& model, const KfState& state, const std::optional<Measurement>& meas) {
  KfState prior = predict(model, state);
  if (!meas) return prior;
  return update(model, prior, meas->z, meas->R);
}

}  // namespace isac
