#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "isac/baselines.hpp"
#include "isac/environment.hpp"
#include "isac/learner/sac.hpp"

namespace isac::harness {

enum class Mode { kTrain, kEval, kSweep };
enum class SweepAxis { kNone, kGammaTh, kSigmaReq, kUpa, kUsers };

SweepAxis parse_axis(const std::string& name);
std::string axis_name(SweepAxis axis);

// Allowed grids: gamma_th {0,5,10,15,20} dB, sigma_req {0.1,0.5,1,2,4} m,
// upa M_x = M_y in 2..6, users K in 3..15. Throws ContractError otherwise.
void validate_sweep_value(SweepAxis axis, double value);

// Copy of `base` with the swept field replaced. gamma_th is given in dB. A fixed
// user layout is dropped when the users axis changes K.
ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepAxis axis, double value);

struct SeedRange {
  std::uint64_t first = 100;
  std::uint64_t last = 199;  // inclusive

  // "100..199" or a single seed "7"
  static SeedRange parse(const std::string& text);
  std::size_t count() const { return static_cast<std::size_t>(last - first + 1); }
};

struct RunSpec {
  Mode mode = Mode::kEval;
  std::vector<std::string> policies;  // names or checkpoint paths
  std::filesystem::path config;
  SeedRange seeds;
  int episodes = 300;
  std::filesystem::path out = "out";
  SweepAxis axis = SweepAxis::kNone;
  std::vector<double> values;
  int jobs = 1;

  void validate() const;
};

// Everything a run reads from its JSON config file:
// {"scenario": {...}, "sac": {...}, "kfrand": {...}, "train": {...}}; all optional.
struct RunConfig {
  ScenarioConfig scenario;
  learner::SacParams sac;
  KfRandParams kfrand;
  std::uint64_t train_seed_base = 1000;
  std::uint64_t agent_seed = 7;
};

RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

// Per-episode metrics; SNR and SINR are linear means, converted to dB only when written.
struct MetricRow {
  std::uint64_t seed = 0;
  int episode = 0;
  std::string policy;
  SweepAxis axis = SweepAxis::kNone;
  double sweep_value = 0.0;
  double mean_aoi = 0.0;        // mean over slots of the user-averaged age
  double episode_return = 0.0;  // sum of rewards
  double mean_pulse_snr = 0.0;  // over the N slots
  double mean_sinr = 0.0;       // over scheduled (user, slot) pairs
};

// Deterministic greedy SAC policy (tanh of the mean).
class SacPolicy final : public Policy {
 public:
  explicit SacPolicy(learner::SacAgent agent) : agent_(std::move(agent)) {}
  EnvAction act(const EnvState& state, const ScenarioConfig& cfg, Rng& rng) override;
  std::string name() const override { return "sac"; }

 private:
  learner::SacAgent agent_;
};

using PolicyFactory = std::function<std::unique_ptr<Policy>()>;

// "sags", "kfrand", "random", or a path to a checkpoint file. Unknown names that
// are not existing files raise std::runtime_error naming the path.
PolicyFactory policy_factory(const std::string& name_or_path, const KfRandParams& kfrand = {});

// One full rollout. The policy draws from the seed's policy stream.
MetricRow run_episode(Environment& env, Policy& policy, std::uint64_t seed);

// One row per seed in ascending seed order; `jobs` > 1 spreads seeds over threads
// without changing the output.
std::vector<MetricRow> monte_carlo(const ScenarioConfig& cfg, const PolicyFactory& make_policy, const SeedRange& seeds,
                                   int jobs = 1, SweepAxis axis = SweepAxis::kNone, double sweep_value = 0.0);

struct Stat {
  double mean = 0.0;
  double se = 0.0;  // standard error of the mean
};
Stat mean_and_stderr(const std::vector<double>& values);

struct SummaryRow {
  std::string policy;
  SweepAxis axis = SweepAxis::kNone;
  double sweep_value = 0.0;
  std::size_t count = 0;
  Stat mean_aoi;
  Stat episode_return;
  Stat mean_pulse_snr;  // linear
  Stat mean_sinr;       // linear
};
SummaryRow summarize(const std::vector<MetricRow>& rows);

void write_rows_csv(std::ostream& out, const std::vector<MetricRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
// %.9g
std::string format_float(double v);

struct TrainReport {
  std::vector<double> returns;
  std::int64_t gradient_steps = 0;
  std::filesystem::path checkpoint;
};

// Trains SAC on the config's scenario and writes checkpoint.json and
// train_returns.csv into `out`.
TrainReport run_training(const RunConfig& cfg, int episodes, const std::filesystem::path& out,
                         const learner::EpisodeCallback& on_episode = {});

// eval / sweep: writes <mode>_rows.csv and <mode>_summary.csv into spec.out.
std::vector<SummaryRow> run_evaluation(const RunSpec& spec, const RunConfig& cfg);

}  // namespace isac::harness
