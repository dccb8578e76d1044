#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "isac/beam_control.hpp"
#include "isac/rf_link.hpp"
#include "isac/scenario.hpp"

namespace {

using namespace isac;

std::vector<CVector> random_channels(std::mt19937_64& rng, int k, int m, double scale) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<CVector> h(static_cast<std::size_t>(k), CVector(m));
  for (auto& v : h) {
    for (int i = 0; i < m; ++i) v(i) = scale * Complex(n(rng), n(rng));
  }
  return h;
}

TEST(Schedule, ThresholdComparison) {
  const std::vector<double> l{2.0, -1.0, 0.5};
  EXPECT_EQ(schedule_users(l, 0.0), (std::vector<int>{0, 2}));
}

TEST(Schedule, FallbackToArgmax) {
  const std::vector<double> l{-3.0, -0.5, -2.0};
  EXPECT_EQ(schedule_users(l, 0.0), (std::vector<int>{1}));
}

TEST(Schedule, TieGoesToLowestIndex) {
  const std::vector<double> l{1.0, 1.0, 0.0};
  EXPECT_EQ(schedule_users(l, 2.0), (std::vector<int>{0}));
}

TEST(Schedule, RaisingThresholdNeverAddsUsers) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n(0.0, 2.0);
  for (int t = 0; t < 500; ++t) {
    std::vector<double> l(7);
    for (auto& x : l) x = n(rng);
    std::size_t prev = l.size() + 1;
    for (double tau = -6.0; tau <= 6.0; tau += 0.25) {
      const auto u = schedule_users(l, tau);
      EXPECT_GE(u.size(), 1u);
      EXPECT_LE(u.size(), prev);
      prev = u.size();
    }
  }
}

TEST(PowerSplit, EqualLogitsSplitEvenly) {
  const std::vector<double> l{0.3};
  const std::vector<int> s{0};
  const Eigen::VectorXd r = power_split(l, 0.3, s);
  EXPECT_NEAR(r(0), 0.5, 1e-15);
  EXPECT_NEAR(r(1), 0.5, 1e-15);
}

TEST(PowerSplit, UnscheduledGetExactlyZero) {
  const std::vector<double> l{1.0, 4.0, -2.0};
  const std::vector<int> s{0, 2};
  const Eigen::VectorXd r = power_split(l, 0.0, s);
  EXPECT_EQ(r(2), 0.0);
  EXPECT_NEAR(r.sum(), 1.0, 1e-12);
}

TEST(PowerSplit, TwoToOne) {
  const std::vector<double> l{0.0};
  const std::vector<int> s{0};
  const Eigen::VectorXd r = power_split(l, std::log(2.0), s);
  EXPECT_NEAR(r(0), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r(1), 1.0 / 3.0, 1e-15);
}

TEST(PowerSplit, ShiftInvariantAndOnSimplex) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> n(0.0, 3.0);
  for (int t = 0; t < 300; ++t) {
    std::vector<double> l(5);
    for (auto& x : l) x = n(rng);
    const double tl = n(rng);
    const auto s = schedule_users(l, 0.0);
    const Eigen::VectorXd a = power_split(l, tl, s);
    std::vector<double> shifted = l;
    for (auto& x : shifted) x += 17.0;
    const Eigen::VectorXd b = power_split(shifted, tl + 17.0, s);
    EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(a.sum(), 1.0, 1e-12);
    EXPECT_GT(a(0), 0.0);
  }
}

TEST(PowerSplit, LargeLogitsStayFinite) {
  const std::vector<double> l{800.0, 790.0};
  const std::vector<int> s{0, 1};
  const Eigen::VectorXd r = power_split(l, -800.0, s);
  EXPECT_TRUE(r.allFinite());
  EXPECT_NEAR(r.sum(), 1.0, 1e-12);
}

TEST(SensingDirection, UnitNormAndMatchedGain) {
  const ArrayConfig arr = ScenarioConfig{}.array();
  const Vec3 uav(100, 100, 50);
  const Vec2 target(160, 40);
  const CVector v = sensing_direction(arr, uav, target);
  EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  const AoD truth = compute_aod(uav, Vec3(target.x(), target.y(), 0));
  EXPECT_NEAR(array_factor_gain(arr, truth, v), 16.0, 1e-9);
}

TEST(SensingDirection, TenMetreErrorLosesGain) {
  const ArrayConfig arr = ScenarioConfig{}.array();
  const Vec3 uav(0, 0, 50);
  const Vec2 truth(193.6, 0);  // ~200 m slant range
  const CVector v = sensing_direction(arr, uav, truth + Vec2(0, 10));
  const double g = array_factor_gain(arr, compute_aod(uav, Vec3(truth.x(), truth.y(), 0)), v);
  EXPECT_LT(g, 16.0 - 1e-6);
}

TEST(Rzf, SingleUserIsMatchedFilter) {
  std::mt19937_64 rng(33);
  const auto h = random_channels(rng, 1, 16, 1e-4);
  const std::vector<double> p{0.05};
  const auto v = rzf_directions(h, p, 1e-12);
  EXPECT_NEAR(v[0].norm(), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(h[0].dot(v[0])), h[0].norm(), 1e-12 * h[0].norm());
}

TEST(Rzf, RegularizationFloor) {
  const std::vector<double> big{1e30, 1e30};
  EXPECT_EQ(rzf_regularization(big, 1e-12), 1e-9);
  const std::vector<double> zero{0.0, 0.0};
  EXPECT_EQ(rzf_regularization(zero, 1e-12), 1e-9);
  const std::vector<double> p{0.02, 0.03};
  EXPECT_NEAR(rzf_regularization(p, 1e-3), std::max(1e-9, 2 * 1e-3 / 0.05), 1e-18);
}

TEST(Rzf, LargeAlphaApproachesMatchedFilter) {
  std::mt19937_64 rng(34);
  const auto h = random_channels(rng, 3, 16, 1e-3);
  Eigen::MatrixXcd hm(3, 16);
  for (int k = 0; k < 3; ++k) hm.row(k) = h[static_cast<std::size_t>(k)].adjoint();
  const double scale = (hm * hm.adjoint()).norm();
  const auto v = rzf_directions_with_alpha(h, 1e6 * scale);
  for (int k = 0; k < 3; ++k) {
    const CVector mf = h[static_cast<std::size_t>(k)].normalized();
    EXPECT_GT(std::abs(mf.dot(v[static_cast<std::size_t>(k)])), 1.0 - 1e-6);
  }
}

TEST(Rzf, NullsOtherUsersAtHighSnr) {
  std::mt19937_64 rng(35);
  const auto h = random_channels(rng, 4, 16, 1e-4);
  const auto v = rzf_directions_with_alpha(h, 1e-20);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i == j) continue;
      EXPECT_LT(std::norm(h[i].dot(v[j])), 1e-9 * std::norm(h[i].dot(v[i])));
    }
  }
}

TEST(Assemble, AllPowerOnSensing) {
  std::vector<CVector> d{CVector::Ones(4).normalized(), CVector::Zero(4)};
  Eigen::VectorXd r(2);
  r << 1.0, 0.0;
  const BeamPlan p = assemble(r, d, 0.1);
  EXPECT_NEAR(p.sensing_beam().squaredNorm(), 0.1, 1e-15);
  EXPECT_EQ(p.beams[1].squaredNorm(), 0.0);
}

TEST(Assemble, UniformSplit) {
  std::vector<CVector> d(4, CVector::Ones(4).normalized());
  const BeamPlan p = assemble(Eigen::VectorXd::Constant(4, 0.25), d, 0.1);
  for (const auto& w : p.beams) EXPECT_NEAR(w.squaredNorm(), 0.025, 1e-15);
}

TEST(Assemble, RandomSimplexUsesFullBudget) {
  std::mt19937_64 rng(36);
  std::exponential_distribution<double> e(1.0);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    Eigen::VectorXd r(5);
    for (int i = 0; i < 5; ++i) r(i) = e(rng);
    r /= r.sum();
    std::vector<CVector> d;
    for (int i = 0; i < 5; ++i) {
      CVector v(8);
      for (int j = 0; j < 8; ++j) v(j) = Complex(n(rng), n(rng));
      d.push_back(v.normalized());
    }
    const BeamPlan p = assemble(r, d, 0.1);
    double total = 0.0;
    for (const auto& w : p.beams) total += w.squaredNorm();
    EXPECT_NEAR(total, 0.1, 1e-9);
    EXPECT_NEAR(p.total_power(), total, 1e-15);
  }
}

TEST(Assemble, OffSimplexRejected) {
  std::vector<CVector> d(2, CVector::Ones(2).normalized());
  Eigen::VectorXd r(2);
  r << 0.7, 0.4;
  EXPECT_THROW(assemble(r, d, 0.1), ContractError);
}

TEST(PlanBeams, ConstraintsHold) {
  const ScenarioConfig cfg;
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> pos(0.0, 1600.0), lg(-5.0, 5.0);
  for (int t = 0; t < 300; ++t) {
    const Vec3 uav(pos(rng), pos(rng), 50);
    std::vector<CVector> h;
    std::vector<double> logits;
    for (int k = 0; k < cfg.num_users; ++k) {
      h.push_back(channel_vector(cfg.link(), cfg.array(), uav, Vec3(pos(rng), pos(rng), 0)));
      logits.push_back(lg(rng));
    }
    const BeamPlan p = plan_beams(BeamRequest{logits, lg(rng), lg(rng)}, h, cfg.array(), uav,
                                  Vec2(pos(rng), pos(rng)), cfg.p_max, cfg.noise_power);
    EXPECT_NEAR(p.ratios.sum(), 1.0, 1e-9);
    EXPECT_GT(p.ratios(0), 0.0);
    EXPECT_LE(p.total_power(), cfg.p_max + 1e-9);
    EXPECT_FALSE(p.scheduled.empty());
    for (int k = 0; k < cfg.num_users; ++k) {
      const bool on = std::find(p.scheduled.begin(), p.scheduled.end(), k) != p.scheduled.end();
      if (!on) EXPECT_EQ(p.beams[static_cast<std::size_t>(k) + 1].squaredNorm(), 0.0);
      else EXPECT_NEAR(p.directions[static_cast<std::size_t>(k) + 1].norm(), 1.0, 1e-9);
    }
  }
}

}  // namespace
