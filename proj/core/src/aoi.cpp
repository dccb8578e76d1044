#include "isac/aoi.hpp"

#include <numeric>

#include "isac/types.hpp"

namespace isac {

AoiState::AoiState(int num_users) {
  if (num_users < 1) throw ContractError("AoiState: need at least one user");
  ages_.assign(static_cast<std::size_t>(num_users), 1);
}

void AoiState::step(bool sensing_ok, const std::vector<bool>& decode_ok) {
  if (decode_ok.size() != ages_.size()) throw ContractError("AoiState::step: one decode flag per user");
  ++slot_;
  for (std::size_t k = 0; k < ages_.size(); ++k) {
    ages_[k] = decode_ok[k] ? slot_ - generation_ : ages_[k] + 1;
  }
  if (sensing_ok) generation_ = slot_;
}

double AoiState::average_age() const {
  const auto total = std::accumulate(ages_.begin(), ages_.end(), std::int64_t{0});
  return static_cast<double>(total) / static_cast<double>(ages_.size());
}

}  // namespace isac
