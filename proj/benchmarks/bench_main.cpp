#include <benchmark/benchmark.h>

#include "isac/baselines.hpp"
#include "isac/beam_control.hpp"
#include "isac/environment.hpp"
#include "isac/learner/sac.hpp"

namespace {

using namespace isac;

void BM_EnvironmentStepSags(benchmark::State& st) {
  ScenarioConfig cfg;
  cfg.num_users = static_cast<int>(st.range(0));
  Environment env(cfg);
  EnvState s = env.reset(100);
  for (auto _ : st) {
    if (env.done()) s = env.reset(100);
    auto r = env.step(sags_action(s, cfg));
    s = std::move(r.next_state);
    benchmark::DoNotOptimize(r.reward);
  }
}
BENCHMARK(BM_EnvironmentStepSags)->Arg(3)->Arg(6)->Arg(15);

void BM_RzfDirections(benchmark::State& st) {
  const int k = static_cast<int>(st.range(0));
  const int m = 16;
  Rng rng(1);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<CVector> h(static_cast<std::size_t>(k), CVector(m));
  for (auto& v : h) {
    for (int i = 0; i < m; ++i) v(i) = Complex(n(rng), n(rng)) * 1e-4;
  }
  const std::vector<double> powers(static_cast<std::size_t>(k), 0.1 / k);
  for (auto _ : st) benchmark::DoNotOptimize(rzf_directions(h, powers, 1e-12));
}
BENCHMARK(BM_RzfDirections)->Arg(3)->Arg(6)->Arg(15);

void BM_SacUpdate(benchmark::State& st) {
  const int width = static_cast<int>(st.range(0));
  learner::SacParams p;
  p.hidden_width = width;
  p.batch_size = 256;
  learner::SacAgent agent(24, 5, p, 3);
  Rng rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 512; ++i) {
    learner::Transition t{Eigen::VectorXd::Random(24), Eigen::VectorXd::Random(5), u(rng),
                          Eigen::VectorXd::Random(24), i % 20 == 19};
    agent.buffer().push(std::move(t));
  }
  for (auto _ : st) agent.update();
}
BENCHMARK(BM_SacUpdate)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
