#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "isac/types.hpp"

namespace isac::learner {

struct Transition {
  Eigen::VectorXd state;
  Eigen::VectorXd action;
  double reward = 0.0;
  Eigen::VectorXd next_state;
  bool done = false;
};

// Column-per-sample minibatch.
struct Batch {
  Eigen::MatrixXd states;
  Eigen::MatrixXd actions;
  Eigen::RowVectorXd rewards;
  Eigen::MatrixXd next_states;
  Eigen::RowVectorXd done;  // 1.0 for terminal transitions

  Eigen::Index size() const { return states.cols(); }
};

// FIFO ring with uniform sampling (with replacement). Storage grows lazily up to
// the capacity, so a large capacity costs nothing until it is used.
class ReplayBuffer {
 public:
  ReplayBuffer(std::size_t capacity, int state_dim, int action_dim);

  void push(Transition t);
  Batch sample(Eigen::Index batch_size, Rng& rng) const;

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  // i-th oldest stored transition
  const Transition& at(std::size_t i) const;

 private:
  std::size_t capacity_;
  int state_dim_;
  int action_dim_;
  std::size_t head_ = 0;  // next slot to overwrite once full
  std::vector<Transition> data_;
};

}  // namespace isac::learner
