#pragma once

#include <cstdint>
#include <vector>

namespace isac {

// Per-user age of information, counted in slots.
//
// g[n] is the slot of the freshest sensed target state. For n >= 2 a user that
// decodes in slot n resets to n - g[n-1]; otherwise its age grows by one. The
// generation slot is refreshed after the ages, so a same-slot sensing success
// only benefits the following slot.
class AoiState {
 public:
  // Slot 1: g[1] = 1, every age 1.
  explicit AoiState(int num_users);

  // Advance to slot n + 1. `decode_ok` holds one flag per user.
  void step(bool sensing_ok, const std::vector<bool>& decode_ok);

  double average_age() const;

  std::int64_t slot() const { return slot_; }
  std::int64_t generation_slot() const { return generation_; }
  const std::vector<std::int64_t>& ages() const { return ages_; }
  int num_users() const { return static_cast<int>(ages_.size()); }

 private:
  std::int64_t slot_ = 1;
  std::int64_t generation_ = 1;
  std::vector<std::int64_t> ages_;
};

}  // namespace isac
