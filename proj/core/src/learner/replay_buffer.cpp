#include "isac/learner/replay_buffer.hpp"

#include <random>

namespace isac::learner {

ReplayBuffer::ReplayBuffer(std::size_t capacity, int state_dim, int action_dim)
    : capacity_(capacity), state_dim_(state_dim), action_dim_(action_dim) {
  if (capacity == 0) throw ContractError("ReplayBuffer: capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  if (t.state.size() != state_dim_ || t.next_state.size() != state_dim_ || t.action.size() != action_dim_) {
    throw ContractError("ReplayBuffer::push: transition shape mismatch");
  }
  if (data_.size() < capacity_) {
    data_.push_back(std::move(t));
    return;
  }
  data_[head_] = std::move(t);
  head_ = (head_ + 1) % capacity_;
}

const Transition& ReplayBuffer::at(std::size_t i) const {
  if (i >= data_.size()) throw ContractError("ReplayBuffer::at: index out of range");
  return data_[(head_ + i) % data_.size()];
}

Batch ReplayBuffer::sample(Eigen::Index batch_size, Rng& rng) const {
  if (batch_size < 1 || static_cast<std::size_t>(batch_size) > data_.size()) {
    throw ContractError("ReplayBuffer::sample: need at least batch_size stored transitions");
  }
  Batch b;
  b.states.resize(state_dim_, batch_size);
  b.actions.resize(action_dim_, batch_size);
  b.rewards.resize(batch_size);
  b.next_states.resize(state_dim_, batch_size);
  b.done.resize(batch_size);
  std::uniform_int_distribution<std::size_t> pick(0, data_.size() - 1);
  for (Eigen::Index j = 0; j < batch_size; ++j) {
    const Transition& t = data_[pick(rng)];
    b.states.col(j) = t.state;
    b.actions.col(j) = t.action;
    b.rewards(j) = t.reward;
    b.next_states.col(j) = t.next_state;
    b.done(j) = t.done ? 1.0 : 0.0;
  }
  return b;
}

}  // namespace isac::learner
