#pragma once

#include <optional>

#include "isac/types.hpp"

namespace isac {

// Nearly-constant-velocity model over (x, y, vx, vy) with position-only measurements.
struct KfModel {
  double dt = 1.0;
  double process_var = 0.25;  // q0^2

  Mat4 transition() const;
  Mat4 process_noise() const;
  static Eigen::Matrix<double, 2, 4> observation();
};

struct KfState {
  Vec4 mean = Vec4::Zero();
  Mat4 cov = Mat4::Identity();

  // Start at a known position with zero velocity and diag(pos_var, pos_var, vel_var, vel_var).
  static KfState at_rest(const Vec2& position, double pos_var = 100.0, double vel_var = 25.0);

  Vec2 position() const { return mean.head<2>(); }
  Vec2 velocity() const { return mean.tail<2>(); }
};

struct Measurement {
  Vec2 z;
  Mat2 R;
};

KfState predict(const KfModel& model, const KfState& state);

// Standard Kalman update; throws ContractError when H C H^T + R is not positive definite.
KfState update(const KfModel& model, const KfState& prior, const Vec2& z, const Mat2& R);

// Predict, then update only if a measurement passed the gate.
KfState gated_step(const KfModel& model, const KfState& state, const std::optional<Measurement>& meas);

}  // namespace isac
