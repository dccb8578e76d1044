#pragma once

#include <span>
#include <vector>

#include "isac/array_geometry.hpp"
#include "isac/types.hpp"

namespace isac {

// Beam index 0 is the sensing beam; index k + 1 is user k.
struct BeamPlan {
  std::vector<int> scheduled;          // 0-based user indices, ascending
  Eigen::VectorXd ratios;              // rho_i, length K + 1
  std::vector<CVector> directions;     // v_i, unit norm or exactly zero
  std::vector<CVector> beams;          // w_i = sqrt(rho_i P_max) v_i

  int num_users() const { return static_cast<int>(beams.size()) - 1; }
  const CVector& sensing_beam() const { return beams.front(); }
  std::span<const CVector> user_beams() const { return {beams.data() + 1, beams.size() - 1}; }
  double total_power() const;
};

// U = {k : logit_k >= threshold}; falls back to the single argmax (lowest index on ties).
std::vector<int> schedule_users(std::span<const double> logits, double threshold);

// Softmax over the sensing beam and the scheduled users; zero elsewhere.
Eigen::VectorXd power_split(std::span<const double> logits, double target_logit,
                            std::span<const int> scheduled);

// Normalized steering vector toward the predicted horizontal target position.
CVector sensing_direction(const ArrayConfig& cfg, const Vec3& uav_pos, const Vec2& predicted_target);

// alpha = max(1e-9, |U| xi^2 / sum P_k).
double rzf_regularization(std::span<const double> powers, double noise_power);

// Columns of H^H (H H^H + alpha I)^{-1}, normalized. Row k of H is h_k^H.
std::vector<CVector> rzf_directions_with_alpha(std::span<const CVector> channels, double alpha);

std::vector<CVector> rzf_directions(std::span<const CVector> channels, std::span<const double> powers,
                                    double noise_power);

// Throws ContractError when the ratios leave the simplex by more than 1e-6.
BeamPlan assemble(const Eigen::VectorXd& ratios, std::vector<CVector> directions, double p_max);

struct BeamRequest {
  std::span<const double> user_logits;
  double target_logit = 0.0;
  double threshold = 0.0;
};

// Full per-slot beam synthesis: schedule, split, RZF user beams at the given
// channels, KF-steered sensing beam, assemble.
BeamPlan plan_beams(const BeamRequest& request, std::span<const CVector> channels,
                    const ArrayConfig& cfg, const Vec3& uav_pos, const Vec2& predicted_target,
                    double p_max, double noise_power);

}  // namespace isac
