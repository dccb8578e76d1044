#include "isac/learner/sac.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace isac::learner {

using nlohmann::json;

void SacParams::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) throw ContractError("gamma must lie in (0, 1)");
  if (!(tau_soft > 0.0 && tau_soft <= 1.0)) throw ContractError("tau_soft must lie in (0, 1]");
  if (batch_size < 1) throw ContractError("batch_size must be >= 1");
  if (update_interval < 1 || grad_repeat < 1) throw ContractError("update_interval and grad_repeat must be >= 1");
  if (!(init_temperature > 0.0)) throw ContractError("init_temperature must be positive");
  if (!(lr_actor > 0.0 && lr_critic > 0.0 && lr_temp > 0.0)) throw ContractError("learning rates must be positive");
  if (buffer_capacity < static_cast<std::size_t>(batch_size)) throw ContractError("buffer_capacity below batch_size");
  if (hidden_width < 1 || hidden_layers < 1) throw ContractError("network needs at least one hidden layer");
  if (!(log_std_min < log_std_max)) throw ContractError("log_std_min must be below log_std_max");
  if (!(squash_eps > 0.0)) throw ContractError("squash_eps must be positive");
}

SacParams sac_params_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (!j.is_object()) throw ContractError("sac parameters must be a JSON object");
  SacParams p;
  for (const auto& [key, v] : j.items()) {
    if (key == "gamma") p.gamma = v.get<double>();
    else if (key == "lr_actor") p.lr_actor = v.get<double>();
    else if (key == "lr_critic") p.lr_critic = v.get<double>();
    else if (key == "lr_temp") p.lr_temp = v.get<double>();
    else if (key == "tau_soft") p.tau_soft = v.get<double>();
    else if (key == "batch_size") p.batch_size = v.get<int>();
    else if (key == "update_interval") p.update_interval = v.get<int>();
    else if (key == "grad_repeat") p.grad_repeat = v.get<int>();
    else if (key == "target_entropy") {
      if (!v.is_null()) p.target_entropy = v.get<double>();
    } else if (key == "init_temperature") p.init_temperature = v.get<double>();
    else if (key == "buffer_capacity") p.buffer_capacity = v.get<std::size_t>();
    else if (key == "hidden_width") p.hidden_width = v.get<int>();
    else if (key == "hidden_layers") p.hidden_layers = v.get<int>();
    else if (key == "log_std_min") p.log_std_min = v.get<double>();
    else if (key == "log_std_max") p.log_std_max = v.get<double>();
    else if (key == "squash_eps") p.squash_eps = v.get<double>();
    else throw ContractError("unknown sac key '" + key + "'");
  }
  p.validate();
  return p;
}

std::string sac_params_to_json(const SacParams& p) {
  json j;
  j["gamma"] = p.gamma;
  j["lr_actor"] = p.lr_actor;
  j["lr_critic"] = p.lr_critic;
  j["lr_temp"] = p.lr_temp;
  j["tau_soft"] = p.tau_soft;
  j["batch_size"] = p.batch_size;
  j["update_interval"] = p.update_interval;
  j["grad_repeat"] = p.grad_repeat;
  j["target_entropy"] = p.target_entropy ? json(*p.target_entropy) : json(nullptr);
  j["init_temperature"] = p.init_temperature;
  j["buffer_capacity"] = p.buffer_capacity;
  j["hidden_width"] = p.hidden_width;
  j["hidden_layers"] = p.hidden_layers;
  j["log_std_min"] = p.log_std_min;
  j["log_std_max"] = p.log_std_max;
  j["squash_eps"] = p.squash_eps;
  return j.dump(2);
}

Eigen::RowVectorXd td_target(double gamma, const Eigen::RowVectorXd& rewards, const Eigen::RowVectorXd& done,
                             const Eigen::RowVectorXd& q1_next, const Eigen::RowVectorXd& q2_next,
                             const Eigen::RowVectorXd& log_prob_next, double temperature) {
  const Eigen::Index n = rewards.size();
  if (done.size() != n || q1_next.size() != n || q2_next.size() != n || log_prob_next.size() != n) {
    throw ContractError("td_target: size mismatch");
  }
  const Eigen::ArrayXd soft_value = q1_next.array().min(q2_next.array()) - temperature * log_prob_next.array();
  return (rewards.array() + gamma * (1.0 - done.array()) * soft_value.transpose()).matrix();
}

void soft_update(Eigen::VectorXd& target, const Eigen::VectorXd& source, double tau) {
  if (target.size() != source.size()) throw ContractError("soft_update: shape mismatch");
  target = tau * source + (1.0 - tau) * target;
}

namespace {

std::vector<int> critic_widths(int state_dim, int action_dim, const SacParams& p) {
  std::vector<int> w{state_dim + action_dim};
  for (int i = 0; i < p.hidden_layers; ++i) w.push_back(p.hidden_width);
  w.push_back(1);
  return w;
}

Eigen::MatrixXd stack(const Eigen::MatrixXd& top, const Eigen::MatrixXd& bottom) {
  Eigen::MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

}  // namespace

SacAgent::SacAgent(int state_dim, int action_dim, SacParams params, std::uint64_t seed)
    : params_(std::move(params)),
      state_dim_(state_dim),
      action_dim_(action_dim),
      target_entropy_(params_.target_entropy.value_or(-static_cast<double>(action_dim))),
      actor_(state_dim, action_dim, params_.hidden_width, params_.hidden_layers),
      q1_(critic_widths(state_dim, action_dim, params_)),
      q2_(critic_widths(state_dim, action_dim, params_)),
      log_temp_(Eigen::VectorXd::Constant(1, std::log(params_.init_temperature))),
      buffer_(params_.buffer_capacity, state_dim, action_dim),
      rng_(seed) {
  params_.validate();
  actor_.log_std_min = params_.log_std_min;
  actor_.log_std_max = params_.log_std_max;
  actor_.squash_eps = params_.squash_eps;
  actor_.net().init(rng_);
  q1_.init(rng_);
  q2_.init(rng_);
  q1_target_ = q1_;
  q2_target_ = q2_;
  actor_opt_ = Adam(actor_.net().param_count(), params_.lr_actor);
  q1_opt_ = Adam(q1_.param_count(), params_.lr_critic);
  q2_opt_ = Adam(q2_.param_count(), params_.lr_critic);
  temp_opt_ = Adam(1, params_.lr_temp);
}

double SacAgent::temperature() const { return std::exp(log_temp_(0)); }

Eigen::VectorXd SacAgent::act(const Eigen::VectorXd& obs, bool deterministic) {
  const Eigen::MatrixXd s = obs;
  if (deterministic) return actor_.deterministic(s).col(0);
  return actor_.sample(s, rng_).action.col(0);
}

LossNoise SacAgent::draw_noise(Eigen::Index batch_size) {
  std::normal_distribution<double> normal(0.0, 1.0);
  LossNoise n;
  n.next.resize(action_dim_, batch_size);
  n.current.resize(action_dim_, batch_size);
  for (Eigen::Index j = 0; j < batch_size; ++j) {
    for (int i = 0; i < action_dim_; ++i) n.next(i, j) = normal(rng_);
  }
  for (Eigen::Index j = 0; j < batch_size; ++j) {
    for (int i = 0; i < action_dim_; ++i) n.current(i, j) = normal(rng_);
  }
  return n;
}

Eigen::RowVectorXd SacAgent::q_values(const Mlp& critic, const Eigen::MatrixXd& states,
                                      const Eigen::MatrixXd& actions) const {
  return critic.forward(stack(states, actions)).row(0);
}

SacLosses SacAgent::compute_losses(const Batch& batch, const LossNoise& noise) const {
  const Eigen::Index b = batch.size();
  const double inv_b = 1.0 / static_cast<double>(b);
  const double kappa = temperature();
  SacLosses out;

  // critics
  const auto next = actor_.sample(batch.next_states, noise.next);
  const Eigen::MatrixXd next_in = stack(batch.next_states, next.action);
  out.td_target = td_target(params_.gamma, batch.rewards, batch.done, q1_target_.forward(next_in).row(0),
                            q2_target_.forward(next_in).row(0), next.log_prob, kappa);

  const Eigen::MatrixXd sa = stack(batch.states, batch.actions);
  out.critic = 0.0;
  auto critic_part = [&](const Mlp& q, Eigen::VectorXd& grad) {
    MlpCache cache;
    const Eigen::RowVectorXd diff = q.forward(sa, &cache).row(0) - out.td_target;
    out.critic += 0.5 * diff.squaredNorm() * inv_b;
    grad = Eigen::VectorXd::Zero(q.param_count());
    q.backward(cache, diff * inv_b, &grad);
  };
  critic_part(q1_, out.grad_q1);
  critic_part(q2_, out.grad_q2);

  // actor: mean(kappa log pi - Q1(s, a~)), gradient through the sample path
  const auto cur = actor_.sample(batch.states, noise.current);
  MlpCache qcache;
  const Eigen::RowVectorXd q_new = q1_.forward(stack(batch.states, cur.action), &qcache).row(0);
  out.log_prob = cur.log_prob;
  out.actor = (kappa * cur.log_prob - q_new).mean();
  const Eigen::MatrixXd d_in = q1_.backward(qcache, Eigen::RowVectorXd::Constant(b, -inv_b), nullptr);
  out.grad_actor = Eigen::VectorXd::Zero(actor_.net().param_count());
  actor_.backward(cur, d_in.bottomRows(action_dim_), Eigen::RowVectorXd::Constant(b, kappa * inv_b),
                  &out.grad_actor);

  // temperature: mean(kappa (-log pi - H_tar)), log pi held constant
  const double slack = (-cur.log_prob.array() - target_entropy_).mean();
  out.temperature = kappa * slack;
  out.grad_log_temperature = kappa * slack;
  return out;
}

void SacAgent::apply(const SacLosses& losses) {
  q1_opt_.step(q1_.params(), losses.grad_q1);
  q2_opt_.step(q2_.params(), losses.grad_q2);
  actor_opt_.step(actor_.net().params(), losses.grad_actor);
  temp_opt_.step(log_temp_, Eigen::VectorXd::Constant(1, losses.grad_log_temperature));
  ++gradient_steps_;
}

void SacAgent::soft_update_targets() {
  soft_update(q1_target_.params(), q1_.params(), params_.tau_soft);
  soft_update(q2_target_.params(), q2_.params(), params_.tau_soft);
}

bool SacAgent::update() {
  if (buffer_.size() < static_cast<std::size_t>(params_.batch_size)) return false;
  for (int r = 0; r < params_.grad_repeat; ++r) {
    const Batch batch = buffer_.sample(params_.batch_size, rng_);
    const LossNoise noise = draw_noise(params_.batch_size);
    apply(compute_losses(batch, noise));
  }
  soft_update_targets();
  return true;
}

TrainResult train(SacAgent& agent, Environment& env, int episodes, std::uint64_t seed_base,
                  const EpisodeCallback& on_episode) {
  if (env.state_dim() != agent.state_dim() || env.action_dim() != agent.action_dim()) {
    throw ContractError("train: agent and environment dimensions differ");
  }
  TrainResult result;
  const ScenarioConfig& cfg = env.config();
  for (int e = 0; e < episodes; ++e) {
    EnvState state = env.reset(seed_base + static_cast<std::uint64_t>(e));
    Eigen::VectorXd obs = encode_observation(state, cfg);
    double ret = 0.0;
    bool done = false;
    while (!done) {
      const Eigen::VectorXd a = agent.act(obs, false);
      StepResult step = env.step(EnvAction{a});
      Eigen::VectorXd next_obs = encode_observation(step.next_state, cfg);
      agent.buffer().push(Transition{obs, a, step.reward, next_obs, step.done});
      ret += step.reward;
      done = step.done;
      obs = std::move(next_obs);
      ++result.env_steps;
      if (result.env_steps % agent.params().update_interval == 0) agent.update();
    }
    result.returns.push_back(ret);
    if (on_episode) on_episode(e, ret);
  }
  result.gradient_steps = agent.gradient_steps();
  return result;
}

}  // namespace isac::learner
