// isac: train, evaluate and sweep the UAV ISAC policies.
//
//   isac train --config configs/desk.json --episodes 300 --out runs/desk
//   isac eval  --policy sags,kfrand --config configs/desk.json --seeds 100..199 --out runs/eval
//   isac sweep --axis gamma_th --values 0,5,10,15,20 --policy sags --config configs/default.json --out runs/fig
//
// ISAC_LOG_LEVEL selects the log level (trace, debug, info, warn, error, off).

#include <cstdlib>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "isac/harness.hpp"

namespace {

using namespace isac::harness;

void configure_logging() {
  if (const char* level = std::getenv("ISAC_LOG_LEVEL")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

RunConfig config_or_default(const std::string& path) {
  return path.empty() ? RunConfig{} : load_run_config(path);
}

void log_summary(const std::vector<SummaryRow>& rows) {
  for (const auto& s : rows) {
    spdlog::info("{:>8} {:>9} {:>6}  n={}  AoI {:.4f} +- {:.4f}  return {:.3f}", s.policy, axis_name(s.axis),
                 s.axis == SweepAxis::kNone ? std::string("-") : format_float(s.sweep_value), s.count,
                 s.mean_aoi.mean, s.mean_aoi.se, s.episode_return.mean);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"UAV integrated sensing and communication: SAC training and evaluation"};
  app.require_subcommand(1);

  std::string config;
  std::string out = "out";
  int episodes = 300;
  std::string policies;
  std::string seeds = "100..199";
  std::string axis;
  std::vector<double> values;
  int jobs = 1;

  auto* train = app.add_subcommand("train", "train SAC and write a checkpoint");
  train->add_option("--config", config, "run config (JSON)");
  train->add_option("--episodes", episodes, "training episodes")->check(CLI::NonNegativeNumber);
  train->add_option("--out", out, "output directory");

  auto* eval = app.add_subcommand("eval", "Monte-Carlo evaluation over a seed range");
  auto* sweep = app.add_subcommand("sweep", "evaluation repeated along one parameter axis");
  for (auto* sub : {eval, sweep}) {
    sub->add_option("--policy", policies, "comma-separated: sags, kfrand, random or a checkpoint path")->required();
    sub->add_option("--config", config, "run config (JSON)");
    sub->add_option("--seeds", seeds, "seed range A..B (inclusive)");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  }
  sweep->add_option("--axis", axis, "gamma_th | sigma_req | upa | users")->required();
  sweep->add_option("--values", values, "sweep values")->required()->delimiter(',');

  CLI11_PARSE(app, argc, argv);

  try {
    const RunConfig cfg = config_or_default(config);
    if (*train) {
      spdlog::info("training {} episodes (K={}, N={}, {}x{} UPA)", episodes, cfg.scenario.num_users,
                   cfg.scenario.horizon, cfg.scenario.mx, cfg.scenario.my);
      const auto report = run_training(cfg, episodes, out, [](int e, double ret) {
        spdlog::debug("episode {:4d} return {:.3f}", e, ret);
        if ((e + 1) % 25 == 0) spdlog::info("episode {:4d} return {:.3f}", e + 1, ret);
      });
      spdlog::info("{} gradient steps; checkpoint {}", report.gradient_steps, report.checkpoint.string());
      return 0;
    }

    RunSpec spec;
    spec.mode = *sweep ? Mode::kSweep : Mode::kEval;
    spec.policies = CLI::detail::split(policies, ',');
    spec.config = config;
    spec.seeds = SeedRange::parse(seeds);
    spec.out = out;
    spec.jobs = jobs;
    if (*sweep) {
      spec.axis = parse_axis(axis);
      spec.values = values;
    }
    log_summary(run_evaluation(spec, cfg));
    return 0;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
}
