#pragma once

#include <memory>
#include <string>

#include "isac/environment.hpp"

namespace isac {

// Anything that maps an observation to a raw action in [-1, 1]^(K+3).
class Policy {
 public:
  virtual ~Policy() = default;
  virtual EnvAction act(const EnvState& state, const ScenarioConfig& cfg, Rng& rng) = 0;
  virtual std::string name() const = 0;
};

// Single-user AoI-greedy: fly toward the stalest user (lowest index on ties),
// serve only that user and split power evenly with the sensing beam.
EnvAction sags_action(const EnvState& state, const ScenarioConfig& cfg);

struct KfRandParams {
  double logit_std = 1.0;   // sigma_logit, in logit units
  double jitter_std = 5.0;  // m
};

// Random waypoint in a disc of radius v_max dt around the one-step KF prediction
// plus Gaussian jitter; user logits ~ N(0, sigma^2) with threshold 0.
EnvAction kfrand_action(const EnvState& state, const ScenarioConfig& cfg, Rng& rng,
                        const KfRandParams& params = {});

// Uniform over [-1, 1]^(K+3).
EnvAction uniform_random_action(const ScenarioConfig& cfg, Rng& rng);

class SagsPolicy final : public Policy {
 public:
  EnvAction act(const EnvState& state, const ScenarioConfig& cfg, Rng&) override { return sags_action(state, cfg); }
  std::string name() const override { return "sags"; }
};

class KfRandPolicy final : public Policy {
 public:
  explicit KfRandPolicy(KfRandParams params = {}) : params_(params) {}
  EnvAction act(const EnvState& state, const ScenarioConfig& cfg, Rng& rng) override {
    return kfrand_action(state, cfg, rng, params_);
  }
  std::string name() const override { return "kfrand"; }

 private:
  KfRandParams params_;
};

class RandomPolicy final : public Policy {
 public:
  EnvAction act(const EnvState&, const ScenarioConfig& cfg, Rng& rng) override {
    return uniform_random_action(cfg, rng);
  }
  std::string name() const override { return "random"; }
};

}  // namespace isac
