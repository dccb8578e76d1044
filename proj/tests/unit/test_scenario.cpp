#include <gtest/gtest.h>

#include "isac/harness.hpp"
#include "isac/scenario.hpp"

namespace {

using namespace isac;

TEST(Scenario, DefaultsMatchReferenceSetup) {
  const ScenarioConfig c;
  EXPECT_EQ(c.num_users, 6);
  EXPECT_EQ(c.horizon, 60);
  EXPECT_EQ(c.dt, 1.0);
  EXPECT_EQ(c.uav_vmax, 20.0);
  EXPECT_EQ(c.uav_altitude, 50.0);
  EXPECT_EQ(c.mx * c.my, 16);
  EXPECT_NEAR(watts_to_dbm(c.p_max), 20.0, 1e-12);
  EXPECT_NEAR(linear_to_db(c.sinr_threshold), 10.0, 1e-12);
  EXPECT_NEAR(linear_to_db(c.elem_gain), 3.0, 1e-12);
  EXPECT_NEAR(watts_to_dbm(c.noise_power), -90.0, 1e-9);
  EXPECT_EQ(c.accuracy_req, 1.0);
  EXPECT_EQ(c.process_var, 0.25);
  EXPECT_EQ(c.target_vmax, 15.0);
  EXPECT_EQ(c.state_dim(), 44);
  EXPECT_EQ(c.action_dim(), 9);
  EXPECT_NO_THROW(c.validate());
}

TEST(Scenario, JsonRoundTrip) {
  ScenarioConfig c;
  c.num_users = 3;
  c.mx = 5;
  c.users = {Vec2(1, 2), Vec2(3, 4), Vec2(5, 6)};
  c.target_end = Vec2(900, 1300);
  const ScenarioConfig d = scenario_from_json(scenario_to_json(c));
  EXPECT_EQ(scenario_to_json(d), scenario_to_json(c));
  EXPECT_EQ(d.users.size(), 3u);
  EXPECT_EQ(d.target_end, Vec2(900, 1300));
}

TEST(Scenario, UnknownKeyRejected) {
  EXPECT_THROW(scenario_from_json(R"({"num_user": 3})"), ContractError);
}

TEST(Scenario, InvalidValuesRejected) {
  EXPECT_THROW(scenario_from_json(R"({"horizon": 0})"), ContractError);
  EXPECT_THROW(scenario_from_json(R"({"p_max": -1})"), ContractError);
  EXPECT_THROW(scenario_from_json(R"({"num_users": 2, "users": [[0, 0]]})"), ContractError);
}

TEST(Scenario, UserLayoutFixture) {
  const auto u = user_layout_from_json("[[600, 100], [900, 100], [1200, 200]]");
  ASSERT_EQ(u.size(), 3u);
  EXPECT_EQ(u[1], Vec2(900, 100));
  EXPECT_THROW(user_layout_from_json("[[1, 2, 3]]"), ContractError);
}

TEST(Scenario, ShippedConfigsLoad) {
  for (const char* name : {"/default.json", "/desk.json"}) {
    const auto rc = harness::load_run_config(std::string(ISAC_CONFIG_DIR) + name);
    EXPECT_NO_THROW(rc.scenario.validate());
  }
  const auto desk = harness::load_run_config(std::string(ISAC_CONFIG_DIR) + "/desk.json");
  EXPECT_EQ(desk.scenario.num_users, 2);
  EXPECT_EQ(desk.scenario.horizon, 20);
  EXPECT_EQ(desk.scenario.mx * desk.scenario.my, 4);
}

}  // namespace
