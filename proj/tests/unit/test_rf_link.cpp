#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "isac/beam_control.hpp"
#include "isac/rf_link.hpp"
#include "isac/scenario.hpp"

namespace {

using namespace isac;
constexpr double kPi = constants::kPi;

const ScenarioConfig kDefaults{};

double friis(double g_elem, double g_user, double lambda, double d) {
  return g_elem * g_user * lambda * lambda / std::pow(4 * kPi * d, 2);
}

TEST(Wavelength, TwoGigahertz) { EXPECT_NEAR(kDefaults.wavelength(), 0.14990, 5e-6); }

TEST(PathLoss, HundredMetres) {
  const LinkBudget link = kDefaults.link();
  const double g = path_loss(link, 100.0);
  EXPECT_NEAR(g, friis(link.elem_gain, link.user_gain, link.wavelength, 100.0), 1e-22);
  // 2.843e-8 is the same formula with lambda rounded to 0.15 m
  EXPECT_NEAR(g, 2.843e-8, 0.003 * 2.843e-8);
  EXPECT_NEAR(linear_to_db(g), -75.46, 0.02);
}

TEST(PathLoss, InverseSquare) {
  const LinkBudget link = kDefaults.link();
  const double ref = path_loss(link, 10.0) * 100.0;
  for (double d : {1.0, 3.3, 50.0, 400.0, 2500.0}) {
    EXPECT_NEAR(path_loss(link, d) * d * d / ref, 1.0, 1e-12);
    EXPECT_NEAR(path_loss(link, 2 * d) * 4, path_loss(link, d), 1e-12 * path_loss(link, d));
  }
}

TEST(PathLoss, NonPositiveDistanceIsDomainError) {
  EXPECT_THROW(path_loss(kDefaults.link(), 0.0), std::domain_error);
  EXPECT_THROW(path_loss(kDefaults.link(), -1.0), std::domain_error);
}

TEST(ChannelVector, FlatMagnitude) {
  const LinkBudget link = kDefaults.link();
  const ArrayConfig arr = kDefaults.array();
  const Vec3 uav(10, 20, 50), user(300, -40, 0);
  const CVector h = channel_vector(link, arr, uav, user);
  const double root_beta = std::sqrt(path_loss(link, (uav - user).norm()));
  for (Eigen::Index i = 0; i < h.size(); ++i) EXPECT_NEAR(std::abs(h(i)), root_beta, 1e-12 * root_beta);
}

TEST(ChannelVector, OverheadUserSharesOnePhase) {
  const LinkBudget link = kDefaults.link();
  const CVector h = channel_vector(link, kDefaults.array(), Vec3(5, 5, 50), Vec3(5, 5, 0));
  for (Eigen::Index i = 1; i < h.size(); ++i) EXPECT_LT(std::abs(h(i) - h(0)), 1e-15);
  // h^H carries e^{-j 2 pi H / lambda}
  const Complex expected = std::polar(std::sqrt(path_loss(link, 50.0)), -2 * kPi * 50.0 / link.wavelength);
  EXPECT_LT(std::abs(std::conj(h(0)) - expected), 1e-12 * std::abs(expected));
}

TEST(ChannelVector, MatchedInnerProduct) {
  const LinkBudget link = kDefaults.link();
  const ArrayConfig arr = kDefaults.array();
  const Vec3 uav(0, 0, 50), user(120, 80, 0);
  const CVector h = channel_vector(link, arr, uav, user);
  const CVector a = steering_vector(arr, compute_aod(uav, user));
  Complex direct(0, 0);
  for (Eigen::Index i = 0; i < h.size(); ++i) direct += std::conj(h(i)) * a(i);
  const double expected = std::sqrt(path_loss(link, (uav - user).norm())) * arr.element_count();
  EXPECT_NEAR(std::abs(direct), expected, 1e-12 * expected);
}

TEST(Sinr, SingleUserMatchedFilter) {
  const LinkBudget link = kDefaults.link();
  const ArrayConfig arr = kDefaults.array();
  const Vec3 uav(0, 0, 50), user(200, 100, 0);
  const std::vector<CVector> h{channel_vector(link, arr, uav, user)};
  const double p = 0.05;
  const CVector v = steering_vector(arr, compute_aod(uav, user)) / std::sqrt(16.0);
  const std::vector<CVector> w{std::sqrt(p) * v};
  const double beta = path_loss(link, (uav - user).norm());
  const double expected = beta * p * 16 / link.noise_power;
  EXPECT_NEAR(sinr_all_users(h, w, link.noise_power)(0), expected, 1e-9 * expected);
}

TEST(Sinr, ZeroBeamsGiveZero) {
  const LinkBudget link = kDefaults.link();
  const ArrayConfig arr = kDefaults.array();
  std::vector<CVector> h, w;
  for (double x : {100.0, 300.0, 700.0}) {
    h.push_back(channel_vector(link, arr, Vec3(0, 0, 50), Vec3(x, 0, 0)));
    w.push_back(CVector::Zero(16));
  }
  const Eigen::VectorXd g = sinr_all_users(h, w, link.noise_power);
  for (Eigen::Index k = 0; k < g.size(); ++k) EXPECT_EQ(g(k), 0.0);
}

TEST(Sinr, OrthogonalChannelsUnderRzfDoNotInterfere) {
  CVector h1 = CVector::Zero(4), h2 = CVector::Zero(4);
  h1 << Complex(1, 0), Complex(0, 1), Complex(0, 0), Complex(0, 0);
  h2 << Complex(0, 0), Complex(0, 0), Complex(1, 0), Complex(0, -1);
  h1 *= 1e-4;
  h2 *= 1e-4;
  const std::vector<CVector> h{h1, h2};
  const std::vector<double> p{0.05, 0.05};
  const auto v = rzf_directions(h, p, 1e-12);
  for (int k = 0; k < 2; ++k) {
    const double signal = std::norm(h[k].dot(v[k]));
    const double leak = std::norm(h[k].dot(v[1 - k]));
    EXPECT_LT(leak, 1e-9 * signal);
  }
}

TEST(Sinr, InvariantToCommonBeamPhase) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1.0);
  auto rand_vec = [&](double scale) {
    CVector v(16);
    for (int i = 0; i < 16; ++i) v(i) = Complex(n(rng), n(rng)) * scale;
    return v;
  };
  for (int t = 0; t < 100; ++t) {
    std::vector<CVector> h{rand_vec(1e-4), rand_vec(1e-4), rand_vec(1e-4)};
    std::vector<CVector> w{rand_vec(0.1), rand_vec(0.1), rand_vec(0.1)};
    const Eigen::VectorXd base = sinr_all_users(h, w, 1e-12);
    for (auto& b : w) b *= std::polar(1.0, 2 * kPi * (n(rng)));
    const Eigen::VectorXd rotated = sinr_all_users(h, w, 1e-12);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(rotated(k), base(k), 1e-9 * base(k));
  }
}

TEST(Sinr, BeamCountMustMatchUsers) {
  std::vector<CVector> h(2, CVector::Ones(4)), w(1, CVector::Ones(4));
  EXPECT_THROW(sinr_all_users(h, w, 1e-12), ContractError);
}

TEST(ArrayFactor, PerfectSteeringGivesElementCount) {
  const ArrayConfig arr = kDefaults.array();
  const AoD d{0.7, 0.4};
  const CVector v = steering_vector(arr, d).normalized();
  EXPECT_NEAR(array_factor_gain(arr, d, v), 16.0, 1e-12);
}

TEST(ArrayFactor, OrthogonalDirectionGivesZero) {
  ArrayConfig arr;
  arr.mx = 2;
  arr.my = 1;
  const AoD d{0.0, 0.0};  // a = (1, 1)
  CVector v(2);
  v << Complex(1, 0), Complex(-1, 0);
  EXPECT_NEAR(array_factor_gain(arr, d, v.normalized()), 0.0, 1e-15);
}

TEST(ArrayFactor, OffsetPredictionMatchesDirectSum) {
  const ArrayConfig arr = kDefaults.array();
  const Vec3 uav(0, 0, 50);
  const Vec3 truth(86.6, 0, 0);  // 100 m slant range
  const Vec2 predicted(91.6, 0);
  const CVector v = sensing_direction(arr, uav, predicted);
  const CVector a = steering_vector(arr, compute_aod(uav, truth));
  Complex s(0, 0);
  for (Eigen::Index i = 0; i < a.size(); ++i) s += std::conj(a(i)) * v(i);
  const double g = array_factor_gain(arr, compute_aod(uav, truth), v);
  EXPECT_NEAR(g, std::norm(s), 1e-12);
  EXPECT_LT(g, 16.0);
  EXPECT_GT(g, 8.0);
}

TEST(ArrayFactor, CauchySchwarzBound) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> az(-kPi, kPi), el(0.0, kPi / 2);
  const ArrayConfig arr = kDefaults.array();
  for (int t = 0; t < 10000; ++t) {
    CVector v(16);
    for (int i = 0; i < 16; ++i) v(i) = Complex(n(rng), n(rng));
    EXPECT_LE(array_factor_gain(arr, AoD{az(rng), el(rng)}, v.normalized()), 16.0 + 1e-9);
  }
}

TEST(ArrayFactor, RejectsNonUnitDirection) {
  const ArrayConfig arr = kDefaults.array();
  EXPECT_THROW(array_factor_gain(arr, AoD{}, CVector::Ones(16)), ContractError);
}

TEST(RadarPower, HundredMetresFullGain) {
  const RadarBudget radar = kDefaults.radar();
  const ArrayConfig arr = kDefaults.array();
  const double pr = radar_received_power(radar, arr, 0.1, 16.0, 100.0);
  const double lambda = arr.wavelength;
  const double direct = 0.1 * std::pow(arr.elem_gain * 16.0, 2) * lambda * lambda * 1.0 /
                        (std::pow(4 * kPi, 3) * std::pow(100.0, 4));
  EXPECT_NEAR(pr, direct, 1e-12 * direct);
  EXPECT_NEAR(pr, 1.156e-11, 0.005 * 1.156e-11);
  EXPECT_NEAR(watts_to_dbm(pr), -79.4, 0.05);
}

TEST(RadarPower, FourthPowerRangeLaw) {
  const RadarBudget radar = kDefaults.radar();
  const ArrayConfig arr = kDefaults.array();
  for (double r : {10.0, 50.0, 333.0}) {
    const double a = radar_received_power(radar, arr, 0.05, 9.0, r);
    EXPECT_NEAR(radar_received_power(radar, arr, 0.05, 9.0, 2 * r) * 16, a, 1e-12 * a);
  }
}

TEST(RadarPower, LinearInPowerAndRcs) {
  RadarBudget radar = kDefaults.radar();
  const ArrayConfig arr = kDefaults.array();
  const double base = radar_received_power(radar, arr, 0.02, 12.0, 80.0);
  EXPECT_NEAR(radar_received_power(radar, arr, 0.06, 12.0, 80.0), 3 * base, 1e-12 * base);
  radar.rcs = 2.5;
  EXPECT_NEAR(radar_received_power(radar, arr, 0.02, 12.0, 80.0), 2.5 * base, 1e-12 * base);
  EXPECT_EQ(radar_received_power(radar, arr, 0.0, 12.0, 80.0), 0.0);
  EXPECT_THROW(radar_received_power(radar, arr, 0.02, 12.0, 0.0), std::domain_error);
}

TEST(PulseSnr, ReferenceValue) {
  const RadarBudget radar = kDefaults.radar();
  EXPECT_NEAR(radar.thermal_noise(), 4.004e-11, 0.001e-11);
  const double snr = pulse_snr(radar, 1.156e-11);
  EXPECT_NEAR(snr, 9.24, 0.01);
  EXPECT_NEAR(linear_to_db(snr), 9.65, 0.01);
  EXPECT_EQ(pulse_snr(radar, 0.0), 0.0);
}

TEST(PulseSnr, SinglePulseIsRawRatio) {
  RadarBudget radar = kDefaults.radar();
  radar.pulses_per_slot = 1;
  EXPECT_NEAR(pulse_snr(radar, 3e-11), 3e-11 / radar.thermal_noise(), 1e-15);
}

TEST(RadarBudget, RangeBoundAndGate) {
  const RadarBudget radar = kDefaults.radar();
  EXPECT_NEAR(radar.sigma0(), constants::kSpeedOfLight / (std::sqrt(8.0) * kPi * 1e8), 1e-15);
  EXPECT_NEAR(radar.sigma0(), 0.338, 0.005 * 0.338);
  EXPECT_NEAR(radar.snr_gate(), 0.1142, 0.0005);
  EXPECT_NEAR(linear_to_db(radar.snr_gate()), -9.42, 0.05);
}

TEST(MeasurementCovariance, AtGateIsAboutOneSquareMetre) {
  const RadarBudget radar = kDefaults.radar();
  const Mat2 r = measurement_covariance(radar, radar.snr_gate());
  EXPECT_NEAR(r(0, 0), 1.0, 1e-9);
  EXPECT_NEAR(r(1, 1), 1.0, 1e-9);
  EXPECT_EQ(r(0, 1), 0.0);
  EXPECT_LT(measurement_covariance(radar, 1e30).norm(), 1e-30);
  EXPECT_TRUE(measurement_covariance(radar, 0.0).allFinite());
}

TEST(Gate, InclusiveAndMonotone) {
  const RadarBudget radar = kDefaults.radar();
  EXPECT_FALSE(reliability_gate(radar, 0.0));
  EXPECT_TRUE(reliability_gate(radar, radar.snr_gate()));
  EXPECT_FALSE(reliability_gate(radar, std::nextafter(radar.snr_gate(), 0.0)));
  bool seen = false;
  for (double s = 0.0; s < 1.0; s += 1e-3) {
    const bool g = reliability_gate(radar, s);
    if (seen) {
      EXPECT_TRUE(g);
    }
    seen = seen || g;
  }
}

TEST(SampleMeasurement, ZeroCovarianceIsExact) {
  Rng rng(1);
  const Vec2 p(12.5, -3.0);
  EXPECT_EQ(sample_measurement(rng, p, Mat2::Zero()), p);
}

TEST(SampleMeasurement, MomentsMatch) {
  Rng rng(2);
  const Vec2 p(100.0, 200.0);
  Mat2 cov = Mat2::Zero();
  cov(0, 0) = 4.0;
  cov(1, 1) = 0.25;
  const int n = 100000;
  Vec2 sum = Vec2::Zero(), sq = Vec2::Zero();
  for (int i = 0; i < n; ++i) {
    const Vec2 z = sample_measurement(rng, p, cov) - p;
    sum += z;
    sq += z.cwiseAbs2();
  }
  const Vec2 mean = sum / n;
  EXPECT_LT(std::abs(mean(0)), 3 * 2.0 / std::sqrt(n));
  EXPECT_LT(std::abs(mean(1)), 3 * 0.5 / std::sqrt(n));
  EXPECT_NEAR(sq(0) / n, 4.0, 0.05 * 4.0);
  EXPECT_NEAR(sq(1) / n, 0.25, 0.05 * 0.25);
}

}  // namespace
