#pragma once

#include <span>

#include "isac/array_geometry.hpp"
#include "isac/types.hpp"

namespace isac {

struct LinkBudget {
  double elem_gain = 1.9952623149688795;  // G_elem, linear
  double user_gain = 1.0;                 // G_user, linear
  double wavelength = constants::kSpeedOfLight / 2.0e9;
  double noise_power = 1e-12;             // xi^2, watts (-90 dBm)
  double sinr_threshold = 10.0;           // Gamma_th, linear (10 dB)

  void validate() const;
};

struct RadarBudget {
  double rcs = 1.0;              // m^2
  double bandwidth = 100e6;      // Hz
  double noise_temp = 290.0;     // K
  double noise_figure = 100.0;   // linear (20 dB)
  int pulses_per_slot = 32;
  double accuracy_req = 1.0;     // m, 1-sigma horizontal
  double epsilon = 1e-12;

  // High-SNR range accuracy bound c / (sqrt(8) pi B).
  double sigma0() const;
  // Pulse SNR needed for sqrt(diag R) <= accuracy_req.
  double snr_gate() const;
  double thermal_noise() const;

  void validate() const;
};

// Friis gain G_elem G_user lambda^2 / (4 pi d)^2. Throws std::domain_error for d <= 0.
double path_loss(const LinkBudget& budget, double distance);

// Column vector h_k such that h_k^H = sqrt(beta) e^{-j 2 pi d / lambda} a^H(psi, theta).
CVector channel_vector(const LinkBudget& budget, const ArrayConfig& cfg, const Vec3& uav_pos,
                       const Vec3& user_pos);

// Per-user SINR. `user_beams[k]` is w_k (zero for unscheduled users). The sensing
// beam is orthogonal in code and never interferes, so it is not an input here.
Eigen::VectorXd sinr_all_users(std::span<const CVector> channels, std::span<const CVector> user_beams,
                               double noise_power);

// One-way array factor |a^H v|^2. `sensing_dir` must have unit norm (1e-9).
double array_factor_gain(const ArrayConfig& cfg, const AoD& true_aod, const CVector& sensing_dir);

// Monostatic radar equation with two-way element and array-factor gain.
double radar_received_power(const RadarBudget& radar, const ArrayConfig& cfg, double sensing_power,
                            double af_gain, double range);

// Coherently integrated SNR over N_p pulses.
double pulse_snr(const RadarBudget& radar, double received_power);

// R = sigma0^2 / (snr + eps) * I_2.
Mat2 measurement_covariance(const RadarBudget& radar, double snr);

// True iff snr >= (sigma0 / sigma_req)^2.
bool reliability_gate(const RadarBudget& radar, double snr);

// z = p + N(0, cov) for a diagonal covariance.
Vec2 sample_measurement(Rng& rng, const Vec2& true_pos, const Mat2& cov);

}  // namespace isac
