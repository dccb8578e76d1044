#include "isac/learner/mlp.hpp"

#include <cmath>
#include <cstring>

namespace isac::learner {

Mlp::Mlp(std::vector<int> widths) : widths_(std::move(widths)) {
  if (widths_.size() < 2) throw ContractError("Mlp: need at least input and output widths");
  Eigen::Index total = 0;
  for (std::size_t i = 0; i + 1 < widths_.size(); ++i) {
    if (widths_[i] < 1 || widths_[i + 1] < 1) throw ContractError("Mlp: widths must be positive");
    offsets_.push_back(total);
    total += static_cast<Eigen::Index>(widths_[i + 1]) * (widths_[i] + 1);
  }
  params_ = Eigen::VectorXd::Zero(total);
}

void Mlp::init(Rng& rng) {
  for (int l = 0; l < num_layers(); ++l) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(widths_[static_cast<std::size_t>(l)]));
    std::uniform_real_distribution<double> u(-bound, bound);
    const Eigen::Index begin = offsets_[static_cast<std::size_t>(l)];
    const Eigen::Index count = static_cast<Eigen::Index>(widths_[static_cast<std::size_t>(l) + 1]) *
                               (widths_[static_cast<std::size_t>(l)] + 1);
    for (Eigen::Index i = begin; i < begin + count; ++i) params_(i) = u(rng);
  }
}

Eigen::Map<const Eigen::MatrixXd> Mlp::weight(int layer) const {
  const auto l = static_cast<std::size_t>(layer);
  return {params_.data() + offsets_[l], widths_[l + 1], widths_[l]};
}

Eigen::Map<const Eigen::VectorXd> Mlp::bias(int layer) const {
  const auto l = static_cast<std::size_t>(layer);
  return {params_.data() + offsets_[l] + static_cast<Eigen::Index>(widths_[l + 1]) * widths_[l], widths_[l + 1]};
}

Eigen::MatrixXd Mlp::forward(const Eigen::MatrixXd& x, MlpCache* cache) const {
  if (x.rows() != input_dim()) throw ContractError("Mlp::forward: input has the wrong number of rows");
  if (cache) {
    cache->inputs.clear();
    cache->pre.clear();
  }
  Eigen::MatrixXd h = x;
  for (int l = 0; l < num_layers(); ++l) {
    Eigen::MatrixXd z = weight(l) * h;
    z.colwise() += bias(l);
    if (cache) cache->inputs.push_back(std::move(h));
    if (l + 1 == num_layers()) return z;
    h = z.cwiseMax(0.0);
    if (cache) cache->pre.push_back(std::move(z));
  }
  return h;
}

Eigen::MatrixXd Mlp::backward(const MlpCache& cache, const Eigen::MatrixXd& d_out, Eigen::VectorXd* grad) const {
  if (static_cast<int>(cache.inputs.size()) != num_layers()) {
    throw ContractError("Mlp::backward: cache does not come from forward()");
  }
  if (grad && grad->size() != params_.size()) throw ContractError("Mlp::backward: gradient size mismatch");
  Eigen::MatrixXd dz = d_out;
  for (int l = num_layers() - 1; l >= 0; --l) {
    const auto& input = cache.inputs[static_cast<std::size_t>(l)];
    if (grad) {
      const auto li = static_cast<std::size_t>(l);
      Eigen::Map<Eigen::MatrixXd> dw(grad->data() + offsets_[li], widths_[li + 1], widths_[li]);
      Eigen::Map<Eigen::VectorXd> db(grad->data() + offsets_[li] + static_cast<Eigen::Index>(widths_[li + 1]) * widths_[li],
                                     widths_[li + 1]);
      dw.noalias() += dz * input.transpose();
      db += dz.rowwise().sum();
    }
    Eigen::MatrixXd dx = weight(l).transpose() * dz;
    if (l == 0) return dx;
    const auto& z = cache.pre[static_cast<std::size_t>(l) - 1];
    dz = (z.array() > 0.0).select(dx, 0.0);
  }
  return dz;
}

std::uint64_t parameter_hash(const Eigen::VectorXd& params) {
  std::uint64_t h = 1469598103934665603ull;
  const auto* bytes = reinterpret_cast<const unsigned char*>(params.data());
  const std::size_t n = static_cast<std::size_t>(params.size()) * sizeof(double);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= bytes[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace isac::learner
