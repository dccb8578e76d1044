#include "isac/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "isac/learner/checkpoint.hpp"

namespace isac::harness {

using nlohmann::json;

SweepAxis parse_axis(const std::string& name) {
  if (name == "gamma_th") return SweepAxis::kGammaTh;
  if (name == "sigma_req") return SweepAxis::kSigmaReq;
  if (name == "upa") return SweepAxis::kUpa;
  if (name == "users") return SweepAxis::kUsers;
  if (name == "none") return SweepAxis::kNone;
  throw ContractError("unknown sweep axis '" + name + "' (expected gamma_th, sigma_req, upa or users)");
}

std::string axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kGammaTh: return "gamma_th";
    case SweepAxis::kSigmaReq: return "sigma_req";
    case SweepAxis::kUpa: return "upa";
    case SweepAxis::kUsers: return "users";
    case SweepAxis::kNone: break;
  }
  return "none";
}

namespace {

bool on_grid(double value, const std::vector<double>& grid) {
  return std::any_of(grid.begin(), grid.end(), [&](double g) { return std::abs(value - g) <= 1e-9; });
}

bool integer_in(double value, int lo, int hi) {
  return value == std::round(value) && value >= lo && value <= hi;
}

}  // namespace

void validate_sweep_value(SweepAxis axis, double value) {
  bool ok = true;
  switch (axis) {
    case SweepAxis::kGammaTh: ok = on_grid(value, {0, 5, 10, 15, 20}); break;
    case SweepAxis::kSigmaReq: ok = on_grid(value, {0.1, 0.5, 1, 2, 4}); break;
    case SweepAxis::kUpa: ok = integer_in(value, 2, 6); break;
    case SweepAxis::kUsers: ok = integer_in(value, 3, 15); break;
    case SweepAxis::kNone: ok = false; break;
  }
  if (!ok) throw ContractError("sweep value " + format_float(value) + " not allowed on axis " + axis_name(axis));
}

ScenarioConfig apply_sweep(const ScenarioConfig& base, SweepAxis axis, double value) {
  validate_sweep_value(axis, value);
  ScenarioConfig c = base;
  switch (axis) {
    case SweepAxis::kGammaTh: c.sinr_threshold = db_to_linear(value); break;
    case SweepAxis::kSigmaReq: c.accuracy_req = value; break;
    case SweepAxis::kUpa: c.mx = c.my = static_cast<int>(value); break;
    case SweepAxis::kUsers:
      c.num_users = static_cast<int>(value);
      if (!c.users.empty() && static_cast<int>(c.users.size()) != c.num_users) c.users.clear();
      break;
    case SweepAxis::kNone: break;
  }
  c.validate();
  return c;
}

SeedRange SeedRange::parse(const std::string& text) {
  SeedRange r;
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      r.first = r.last = std::stoull(text);
    } else {
      r.first = std::stoull(text.substr(0, dots));
      r.last = std::stoull(text.substr(dots + 2));
    }
  } catch (const std::logic_error&) {
    throw ContractError("bad seed range '" + text + "' (expected A..B)");
  }
  if (r.last < r.first) throw ContractError("seed range '" + text + "' is empty");
  return r;
}

void RunSpec::validate() const {
  if (mode != Mode::kTrain && policies.empty()) throw ContractError("at least one policy is required");
  if (mode == Mode::kTrain && episodes < 0) throw ContractError("episodes must be non-negative");
  if (jobs < 1) throw ContractError("jobs must be >= 1");
  if (mode == Mode::kSweep) {
    if (axis == SweepAxis::kNone) throw ContractError("sweep needs an axis");
    if (values.empty()) throw ContractError("sweep needs at least one value");
    for (double v : values) validate_sweep_value(axis, v);
  }
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunConfig run_config_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw ContractError("run config must be a JSON object");
  RunConfig rc;
  for (const auto& [key, v] : j.items()) {
    if (key == "scenario") {
      rc.scenario = scenario_from_json(v.dump());
    } else if (key == "sac") {
      rc.sac = learner::sac_params_from_json(v.dump());
    } else if (key == "kfrand") {
      for (const auto& [k, x] : v.items()) {
        if (k == "logit_std") rc.kfrand.logit_std = x.get<double>();
        else if (k == "jitter_std") rc.kfrand.jitter_std = x.get<double>();
        else throw ContractError("unknown kfrand key '" + k + "'");
      }
    } else if (key == "train") {
      for (const auto& [k, x] : v.items()) {
        if (k == "seed_base") rc.train_seed_base = x.get<std::uint64_t>();
        else if (k == "agent_seed") rc.agent_seed = x.get<std::uint64_t>();
        else throw ContractError("unknown train key '" + k + "'");
      }
    } else {
      throw ContractError("unknown config section '" + key + "'");
    }
  }
  return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) { return run_config_from_json(slurp(path)); }

EnvAction SacPolicy::act(const EnvState& state, const ScenarioConfig& cfg, Rng&) {
  return EnvAction{agent_.act(encode_observation(state, cfg), true)};
}

PolicyFactory policy_factory(const std::string& name_or_path, const KfRandParams& kfrand) {
  if (name_or_path == "sags") return [] { return std::make_unique<SagsPolicy>(); };
  if (name_or_path == "kfrand") return [kfrand] { return std::make_unique<KfRandPolicy>(kfrand); };
  if (name_or_path == "random") return [] { return std::make_unique<RandomPolicy>(); };
  // anything else is a checkpoint; load once and copy per worker
  auto agent = std::make_shared<const learner::SacAgent>(learner::load_checkpoint(name_or_path));
  return [agent] { return std::make_unique<SacPolicy>(*agent); };
}

MetricRow run_episode(Environment& env, Policy& policy, std::uint64_t seed) {
  Rng rng = make_rng(seed, Stream::kPolicy);
  EnvState state = env.reset(seed);
  MetricRow row;
  row.seed = seed;
  row.policy = policy.name();
  double snr_sum = 0.0;
  double sinr_sum = 0.0;
  std::size_t sinr_count = 0;
  int slots = 0;
  bool done = false;
  while (!done) {
    StepResult r = env.step(policy.act(state, env.config(), rng));
    row.episode_return += r.reward;
    snr_sum += r.report.pulse_snr;
    for (int k : r.report.scheduled) sinr_sum += r.report.sinr(k);
    sinr_count += r.report.scheduled.size();
    ++slots;
    done = r.done;
    state = std::move(r.next_state);
  }
  row.mean_aoi = -row.episode_return / slots;
  row.mean_pulse_snr = snr_sum / slots;
  row.mean_sinr = sinr_count > 0 ? sinr_sum / static_cast<double>(sinr_count) : 0.0;
  return row;
}

std::vector<MetricRow> monte_carlo(const ScenarioConfig& cfg, const PolicyFactory& make_policy, const SeedRange& seeds,
                                   int jobs, SweepAxis axis, double sweep_value) {
  const std::size_t n = seeds.count();
  std::vector<MetricRow> rows(n);
  auto worker = [&](std::size_t begin, std::size_t stride) {
    Environment env(cfg);
    auto policy = make_policy();
    for (std::size_t i = begin; i < n; i += stride) {
      rows[i] = run_episode(env, *policy, seeds.first + i);
      rows[i].axis = axis;
      rows[i].sweep_value = sweep_value;
    }
  };
  const auto threads = static_cast<std::size_t>(std::max(1, std::min<int>(jobs, static_cast<int>(n))));
  if (threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          worker(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  return rows;
}

Stat mean_and_stderr(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  const double n = static_cast<double>(values.size());
  for (double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

SummaryRow summarize(const std::vector<MetricRow>& rows) {
  SummaryRow s;
  if (rows.empty()) return s;
  s.policy = rows.front().policy;
  s.axis = rows.front().axis;
  s.sweep_value = rows.front().sweep_value;
  s.count = rows.size();
  std::vector<double> aoi, ret, snr, sinr;
  for (const auto& r : rows) {
    aoi.push_back(r.mean_aoi);
    ret.push_back(r.episode_return);
    snr.push_back(r.mean_pulse_snr);
    sinr.push_back(r.mean_sinr);
  }
  s.mean_aoi = mean_and_stderr(aoi);
  s.episode_return = mean_and_stderr(ret);
  s.mean_pulse_snr = mean_and_stderr(snr);
  s.mean_sinr = mean_and_stderr(sinr);
  return s;
}

std::string format_float(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9g", v);
  return buf.data();
}

namespace {

std::string sweep_cell(SweepAxis axis, double value) { return axis == SweepAxis::kNone ? "" : format_float(value); }

}  // namespace

void write_rows_csv(std::ostream& out, const std::vector<MetricRow>& rows) {
  out << "policy,axis,value,seed,episode,mean_aoi,return,mean_pulse_snr_db,mean_sinr_db\n";
  for (const auto& r : rows) {
    out << r.policy << ',' << axis_name(r.axis) << ',' << sweep_cell(r.axis, r.sweep_value) << ',' << r.seed << ','
        << r.episode << ',' << format_float(r.mean_aoi) << ',' << format_float(r.episode_return) << ','
        << format_float(linear_to_db(r.mean_pulse_snr)) << ',' << format_float(linear_to_db(r.mean_sinr)) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "policy,axis,value,count,mean_aoi,se_aoi,mean_return,se_return,mean_pulse_snr_db,mean_sinr_db\n";
  for (const auto& s : rows) {
    out << s.policy << ',' << axis_name(s.axis) << ',' << sweep_cell(s.axis, s.sweep_value) << ',' << s.count << ','
        << format_float(s.mean_aoi.mean) << ',' << format_float(s.mean_aoi.se) << ','
        << format_float(s.episode_return.mean) << ',' << format_float(s.episode_return.se) << ','
        << format_float(linear_to_db(s.mean_pulse_snr.mean)) << ',' << format_float(linear_to_db(s.mean_sinr.mean))
        << '\n';
  }
}

TrainReport run_training(const RunConfig& cfg, int episodes, const std::filesystem::path& out,
                         const learner::EpisodeCallback& on_episode) {
  Environment env(cfg.scenario);
  learner::SacAgent agent(env.state_dim(), env.action_dim(), cfg.sac, cfg.agent_seed);
  const auto result = learner::train(agent, env, episodes, cfg.train_seed_base, on_episode);

  std::filesystem::create_directories(out);
  TrainReport report;
  report.returns = result.returns;
  report.gradient_steps = result.gradient_steps;
  report.checkpoint = out / "checkpoint.json";
  learner::save_checkpoint(agent, report.checkpoint);

  std::ofstream csv(out / "train_returns.csv");
  if (!csv) throw std::runtime_error("cannot write " + (out / "train_returns.csv").string());
  csv << "episode,seed,return\n";
  for (std::size_t e = 0; e < result.returns.size(); ++e) {
    csv << e << ',' << cfg.train_seed_base + e << ',' << format_float(result.returns[e]) << '\n';
  }
  return report;
}

std::vector<SummaryRow> run_evaluation(const RunSpec& spec, const RunConfig& cfg) {
  spec.validate();
  std::vector<MetricRow> all_rows;
  std::vector<SummaryRow> summary;
  std::vector<double> values = spec.values;
  if (spec.mode != Mode::kSweep) values = {0.0};

  std::vector<PolicyFactory> factories;
  for (const auto& p : spec.policies) factories.push_back(policy_factory(p, cfg.kfrand));

  for (double v : values) {
    const ScenarioConfig scenario =
        spec.mode == Mode::kSweep ? apply_sweep(cfg.scenario, spec.axis, v) : cfg.scenario;
    const SweepAxis axis = spec.mode == Mode::kSweep ? spec.axis : SweepAxis::kNone;
    for (const auto& factory : factories) {
      auto rows = monte_carlo(scenario, factory, spec.seeds, spec.jobs, axis, v);
      summary.push_back(summarize(rows));
      all_rows.insert(all_rows.end(), rows.begin(), rows.end());
    }
  }

  std::filesystem::create_directories(spec.out);
  const std::string stem = spec.mode == Mode::kSweep ? "sweep" : "eval";
  std::ofstream rows_out(spec.out / (stem + "_rows.csv"));
  std::ofstream summary_out(spec.out / (stem + "_summary.csv"));
  if (!rows_out || !summary_out) throw std::runtime_error("cannot write results into " + spec.out.string());
  write_rows_csv(rows_out, all_rows);
  write_summary_csv(summary_out, summary);
  return summary;
}

}  // namespace isac::harness
