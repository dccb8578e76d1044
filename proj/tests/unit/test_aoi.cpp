#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "isac/aoi.hpp"

namespace {

using isac::AoiState;

TEST(Aoi, InitialSlot) {
  const AoiState a(3);
  EXPECT_EQ(a.slot(), 1);
  EXPECT_EQ(a.generation_slot(), 1);
  for (auto age : a.ages()) EXPECT_EQ(age, 1);
  EXPECT_DOUBLE_EQ(a.average_age(), 1.0);
}

TEST(Aoi, ResetUsesPreviousGeneration) {
  AoiState a(1);
  a.step(false, {false});  // n = 2, g = 1
  a.step(true, {false});   // n = 3, g = 3
  a.step(false, {false});  // n = 4, g = 3
  ASSERT_EQ(a.generation_slot(), 3);
  a.step(true, {true});    // n = 5 decodes with g[4] = 3
  EXPECT_EQ(a.ages()[0], 2);
  EXPECT_EQ(a.generation_slot(), 5);
}

TEST(Aoi, FailureIncrementsByOne) {
  AoiState a(2);
  a.step(true, {false, true});
  a.step(true, {false, false});
  EXPECT_EQ(a.ages()[0], 3);
  EXPECT_EQ(a.ages()[1], 2);
}

TEST(Aoi, AlwaysSuccessfulStaysAtOne) {
  AoiState a(4);
  for (int n = 2; n <= 60; ++n) {
    a.step(true, std::vector<bool>(4, true));
    for (auto age : a.ages()) EXPECT_EQ(age, 1);
  }
}

TEST(Aoi, AverageAge) {
  AoiState a(2);
  a.step(false, {true, false});  // ages (1, 2)
  a.step(false, {true, false});  // ages (2, 3)
  EXPECT_DOUBLE_EQ(a.average_age(), 2.5);
  AoiState b(2);
  b.step(true, {false, true});  // (2, 1)
  b.step(true, {true, false});  // (1, 2)
  b.step(false, {false, false});  // (2, 3)
  EXPECT_DOUBLE_EQ(b.average_age(), 2.5);
}

TEST(Aoi, StaleGenerationMeansAgeIsSlotMinusOne) {
  AoiState a(1);
  for (int n = 2; n <= 40; ++n) {
    a.step(false, {true});
    EXPECT_EQ(a.ages()[0], n - 1);
  }
}

TEST(Aoi, OnlyResetOrIncrement) {
  std::mt19937_64 rng(21);
  std::bernoulli_distribution coin(0.5);
  for (int ep = 0; ep < 200; ++ep) {
    AoiState a(3);
    double total = 1.0;
    for (int n = 2; n <= 60; ++n) {
      const auto before = a.ages();
      const auto g_prev = a.generation_slot();
      std::vector<bool> dec{coin(rng), coin(rng), coin(rng)};
      a.step(coin(rng), dec);
      total += a.average_age();
      for (int k = 0; k < 3; ++k) {
        const auto age = a.ages()[static_cast<std::size_t>(k)];
        EXPECT_GE(age, 1);
        EXPECT_TRUE(age == n - g_prev || age == before[static_cast<std::size_t>(k)] + 1);
        if (!dec[static_cast<std::size_t>(k)]) {
          EXPECT_EQ(age, before[static_cast<std::size_t>(k)] + 1);
        }
      }
      EXPECT_LE(a.generation_slot(), a.slot());
    }
    EXPECT_GT(total, 0.0);
  }
}

TEST(Aoi, EpisodeMeanMatchesDoubleLoop) {
  std::mt19937_64 rng(22);
  std::bernoulli_distribution coin(0.6);
  const int k_users = 4, horizon = 60;
  AoiState a(k_users);
  std::vector<std::vector<long>> table(static_cast<std::size_t>(horizon));
  table[0] = std::vector<long>(k_users, 1);
  double running = a.average_age();
  for (int n = 2; n <= horizon; ++n) {
    std::vector<bool> dec;
    for (int k = 0; k < k_users; ++k) dec.push_back(coin(rng));
    a.step(coin(rng), dec);
    running += a.average_age();
    table[static_cast<std::size_t>(n - 1)].assign(a.ages().begin(), a.ages().end());
  }
  double sum = 0.0;
  for (const auto& row : table) {
    for (long v : row) sum += static_cast<double>(v);
  }
  EXPECT_NEAR(running / horizon, sum / (horizon * k_users), 1e-12);
}

TEST(Aoi, WrongFlagCountRejected) {
  AoiState a(3);
  EXPECT_THROW(a.step(true, {true, false}), std::invalid_argument);
}

}  // namespace
