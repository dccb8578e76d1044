#include "isac/rf_link.hpp"

#include <cmath>

namespace isac {

void LinkBudget::validate() const {
  if (!(elem_gain > 0.0) || !(user_gain > 0.0) || !(wavelength > 0.0) || !(noise_power > 0.0) ||
      !(sinr_threshold > 0.0)) {
    throw ContractError("link budget entries must be strictly positive");
  }
}

double RadarBudget::sigma0() const {
  return constants::kSpeedOfLight / (std::sqrt(8.0) * constants::kPi * bandwidth);
}

double RadarBudget::snr_gate() const {
  const double ratio = sigma0() / accuracy_req;
  return ratio * ratio;
}

double RadarBudget::thermal_noise() const {
  return constants::kBoltzmann * noise_temp * bandwidth * noise_figure;
}

void RadarBudget::validate() const {
  if (!(rcs > 0.0) || !(bandwidth > 0.0) || !(noise_temp > 0.0) || !(noise_figure > 0.0) ||
      pulses_per_slot < 1 || !(accuracy_req > 0.0) || !(epsilon > 0.0)) {
    throw ContractError("radar budget entries must be strictly positive");
  }
}

double path_loss(const LinkBudget& budget, double distance) {
  if (!(distance > 0.0)) throw std::domain_error("path_loss: distance must be positive");
  const double denom = 4.0 * constants::kPi * distance;
  return budget.elem_gain * budget.user_gain * budget.wavelength * budget.wavelength / (denom * denom);
}

CVector channel_vector(const LinkBudget& budget, const ArrayConfig& cfg, const Vec3& uav_pos,
                       const Vec3& user_pos) {
  const double distance = (uav_pos - user_pos).norm();
  const double beta = path_loss(budget, distance);
  const double phase = 2.0 * constants::kPi * distance / budget.wavelength;
  // h^H = sqrt(beta) e^{-j phase} a^H  <=>  h = sqrt(beta) e^{+j phase} a
  return std::polar(std::sqrt(beta), phase) * steering_vector(cfg, compute_aod(uav_pos, user_pos));
}

Eigen::VectorXd sinr_all_users(std::span<const CVector> channels, std::span<const CVector> user_beams,
                               double noise_power) {
  if (channels.size() != user_beams.size()) {
    throw ContractError("sinr_all_users: one beam per user required");
  }
  const auto k_users = static_cast<Eigen::Index>(channels.size());
  Eigen::VectorXd sinr = Eigen::VectorXd::Zero(k_users);
  for (Eigen::Index k = 0; k < k_users; ++k) {
    const CVector& h = channels[k];
    double signal = 0.0;
    double interference = 0.0;
    for (Eigen::Index j = 0; j < k_users; ++j) {
      const CVector& w = user_beams[j];
      if (w.size() != h.size()) throw ContractError("sinr_all_users: beam/channel length mismatch");
      const double p = std::norm(h.dot(w));  // |h^H w|^2
      if (j == k) {
        signal = p;
      } else {
        interference += p;
      }
    }
    sinr(k) = signal / (interference + noise_power);
  }
  return sinr;
}

double array_factor_gain(const ArrayConfig& cfg, const AoD& true_aod, const CVector& sensing_dir) {
  if (sensing_dir.size() != cfg.element_count()) {
    throw ContractError("array_factor_gain: direction length does not match the array");
  }
  if (std::abs(sensing_dir.norm() - 1.0) > 1e-9) {
    throw ContractError("array_factor_gain: sensing direction must have unit norm");
  }
  return std::norm(steering_vector(cfg, true_aod).dot(sensing_dir));
}

double radar_received_power(const RadarBudget& radar, const ArrayConfig& cfg, double sensing_power,
                            double af_gain, double range) {
  if (!(range > 0.0)) throw std::domain_error("radar_received_power: range must be positive");
  const double g = cfg.elem_gain * af_gain;
  const double four_pi = 4.0 * constants::kPi;
  const double range2 = range * range;
  return sensing_power * g * g * cfg.wavelength * cfg.wavelength * radar.rcs /
         (four_pi * four_pi * four_pi * range2 * range2);
}

double pulse_snr(const RadarBudget& radar, double received_power) {
  return received_power / radar.thermal_noise() * radar.pulses_per_slot;
}

Mat2 measurement_covariance(const RadarBudget& radar, double snr) {
  const double s0 = radar.sigma0();
  return (s0 * s0 / (snr + radar.epsilon)) * Mat2::Identity();
}

bool reliability_gate(const RadarBudget& radar, double snr) { return snr >= radar.snr_gate(); }

Vec2 sample_measurement(Rng& rng, const Vec2& true_pos, const Mat2& cov) {
  if (cov(0, 1) != 0.0 || cov(1, 0) != 0.0 || cov(0, 0) < 0.0 || cov(1, 1) < 0.0) {
    throw ContractError("sample_measurement: covariance must be diagonal and PSD");
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec2 z = true_pos;
  z.x() += std::sqrt(cov(0, 0)) * normal(rng);
  z.y() += std::sqrt(cov(1, 1)) * normal(rng);
  return z;
}

}  // namespace isac
