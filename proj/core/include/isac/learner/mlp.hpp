#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "isac/types.hpp"

namespace isac::learner {

// Activations kept from a forward pass so backward() can run later.
struct MlpCache {
  std::vector<Eigen::MatrixXd> inputs;  // input to each layer
  std::vector<Eigen::MatrixXd> pre;     // pre-activation of each hidden layer
};

// Fully connected network with ReLU hidden layers and a linear head. Samples are
// columns. All weights and biases live in one flat vector (layer by layer,
// column-major weight then bias) so optimizers, soft updates and checkpoints can
// treat the network as a single parameter vector.
class Mlp {
 public:
  Mlp() = default;
  explicit Mlp(std::vector<int> widths);

  // PyTorch-style default: U(-1/sqrt(fan_in), 1/sqrt(fan_in)) for weights and biases.
  void init(Rng& rng);

  Eigen::MatrixXd forward(const Eigen::MatrixXd& x, MlpCache* cache = nullptr) const;

  // Returns dL/dx. When `grad` is non-null, dL/dparams is added to it.
  Eigen::MatrixXd backward(const MlpCache& cache, const Eigen::MatrixXd& d_out, Eigen::VectorXd* grad) const;

  const std::vector<int>& widths() const { return widths_; }
  int input_dim() const { return widths_.front(); }
  int output_dim() const { return widths_.back(); }
  int num_layers() const { return static_cast<int>(widths_.size()) - 1; }
  Eigen::Index param_count() const { return params_.size(); }

  Eigen::VectorXd& params() { return params_; }
  const Eigen::VectorXd& params() const { return params_; }

 private:
  Eigen::Map<const Eigen::MatrixXd> weight(int layer) const;
  Eigen::Map<const Eigen::VectorXd> bias(int layer) const;

  std::vector<int> widths_;
  std::vector<Eigen::Index> offsets_;  // start of each layer's block
  Eigen::VectorXd params_;
};

// FNV-1a over the raw parameter bytes; used to detect whether training touched a net.
std::uint64_t parameter_hash(const Eigen::VectorXd& params);

}  // namespace isac::learner
