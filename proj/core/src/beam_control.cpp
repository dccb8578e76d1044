#include "isac/beam_control.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

namespace isac {

double BeamPlan::total_power() const {
  double total = 0.0;
  for (const auto& w : beams) total += w.squaredNorm();
  return total;
}

std::vector<int> schedule_users(std::span<const double> logits, double threshold) {
  if (logits.empty()) throw ContractError("schedule_users: need at least one user");
  std::vector<int> scheduled;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    if (logits[k] >= threshold) scheduled.push_back(static_cast<int>(k));
  }
  if (scheduled.empty()) {
    // max_element returns the first maximum, i.e. the lowest index on ties
    const auto best = std::max_element(logits.begin(), logits.end());
    scheduled.push_back(static_cast<int>(std::distance(logits.begin(), best)));
  }
  return scheduled;
}

Eigen::VectorXd power_split(std::span<const double> logits, double target_logit,
                            std::span<const int> scheduled) {
  if (scheduled.empty()) throw ContractError("power_split: scheduled set must be non-empty");
  double peak = target_logit;
  for (int k : scheduled) peak = std::max(peak, logits[static_cast<std::size_t>(k)]);

  Eigen::VectorXd ratios = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(logits.size()) + 1);
  ratios(0) = std::exp(target_logit - peak);
  for (int k : scheduled) ratios(k + 1) = std::exp(logits[static_cast<std::size_t>(k)] - peak);
  ratios /= ratios.sum();
  return ratios;
}

CVector sensing_direction(const ArrayConfig& cfg, const Vec3& uav_pos, const Vec2& predicted_target) {
  const Vec3 ground(predicted_target.x(), predicted_target.y(), 0.0);
  CVector v = steering_vector(cfg, compute_aod(uav_pos, ground));
  v /= v.norm();
  return v;
}

double rzf_regularization(std::span<const double> powers, double noise_power) {
  double total = 0.0;
  for (double p : powers) total += p;
  const double n = static_cast<double>(powers.size());
  // No transmit power at all: the ratio is undefined, fall back to the floor.
  if (!(total > 0.0)) return 1e-9;
  return std::max(1e-9, n * noise_power / total);
}

std::vector<CVector> rzf_directions_with_alpha(std::span<const CVector> channels, double alpha) {
  if (channels.empty()) throw ContractError("rzf_directions: no scheduled users");
  const auto users = static_cast<Eigen::Index>(channels.size());
  const auto m = channels.front().size();
  CMatrix h_herm(m, users);  // columns h_k, i.e. H^H
  for (Eigen::Index k = 0; k < users; ++k) {
    if (channels[k].size() != m) throw ContractError("rzf_directions: channel length mismatch");
    h_herm.col(k) = channels[k];
  }
  CMatrix gram = h_herm.adjoint() * h_herm;  // H H^H
  gram.diagonal().array() += alpha;
  const Eigen::LLT<CMatrix> llt(gram);
  if (llt.info() != Eigen::Success) throw ContractError("rzf_directions: regularized Gram not PD");
  // V = H^H G^{-1}; G Hermitian so V^H = G^{-1} H.
  const CMatrix v = llt.solve(h_herm.adjoint()).adjoint();

  std::vector<CVector> dirs;
  dirs.reserve(channels.size());
  for (Eigen::Index k = 0; k < users; ++k) {
    CVector col = v.col(k);
    const double norm = col.norm();
    if (norm > 0.0) col /= norm;
    dirs.push_back(std::move(col));
  }
  return dirs;
}

std::vector<CVector> rzf_directions(std::span<const CVector> channels, std::span<const double> powers,
                                    double noise_power) {
  if (powers.size() != channels.size()) throw ContractError("rzf_directions: one power per user");
  return rzf_directions_with_alpha(channels, rzf_regularization(powers, noise_power));
}

BeamPlan assemble(const Eigen::VectorXd& ratios, std::vector<CVector> directions, double p_max) {
  if (static_cast<std::size_t>(ratios.size()) != directions.size()) {
    throw ContractError("assemble: one direction per beam");
  }
  if ((ratios.array() < -1e-6).any() || std::abs(ratios.sum() - 1.0) > 1e-6) {
    throw ContractError("assemble: power ratios are not on the simplex");
  }
  BeamPlan plan;
  plan.ratios = ratios;
  plan.beams.reserve(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    const double rho = std::max(0.0, ratios(static_cast<Eigen::Index>(i)));
    plan.beams.push_back(std::sqrt(rho * p_max) * directions[i]);
  }
  plan.directions = std::move(directions);
  return plan;
}

BeamPlan plan_beams(const BeamRequest& request, std::span<const CVector> channels,
                    const ArrayConfig& cfg, const Vec3& uav_pos, const Vec2& predicted_target,
                    double p_max, double noise_power) {
  const auto k_users = request.user_logits.size();
  if (channels.size() != k_users) throw ContractError("plan_beams: one channel per user");

  std::vector<int> scheduled = schedule_users(request.user_logits, request.threshold);
  const Eigen::VectorXd ratios = power_split(request.user_logits, request.target_logit, scheduled);

  std::vector<CVector> sched_channels;
  std::vector<double> sched_powers;
  for (int k : scheduled) {
    sched_channels.push_back(channels[static_cast<std::size_t>(k)]);
    sched_powers.push_back(ratios(k + 1) * p_max);
  }
  std::vector<CVector> user_dirs = rzf_directions(sched_channels, sched_powers, noise_power);

  const Eigen::Index m = cfg.element_count();
  std::vector<CVector> directions(k_users + 1, CVector::Zero(m));
  directions[0] = sensing_direction(cfg, uav_pos, predicted_target);
  for (std::size_t i = 0; i < scheduled.size(); ++i) {
    directions[static_cast<std::size_t>(scheduled[i]) + 1] = std::move(user_dirs[i]);
  }
  BeamPlan plan = assemble(ratios, std::move(directions), p_max);
  plan.scheduled = std::move(scheduled);
  return plan;
}

}  // namespace isac
