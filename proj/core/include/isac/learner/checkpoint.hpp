#pragma once

#include <filesystem>
#include <string>

#include "isac/learner/sac.hpp"

namespace isac::learner {

inline constexpr const char* kCheckpointFormat = "isac-sac-checkpoint/1";

// JSON document with the format tag, SAC parameters, layer widths, flat
// parameters of every network, Adam moments, log-temperature and RNG state.
// The replay buffer is not stored.
std::string checkpoint_to_json(const SacAgent& agent);
SacAgent checkpoint_from_json(const std::string& text);

void save_checkpoint(const SacAgent& agent, const std::filesystem::path& path);
// Throws std::runtime_error naming the path when the file is missing.
SacAgent load_checkpoint(const std::filesystem::path& path);

}  // namespace isac::learner
