#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "mlca/grid.hpp"

namespace mlca {

enum class ReinforcementMode { Computed, Forced };

// Everything needed to reproduce a run. Serialized as JSON with the unit in
// every physical field name.
struct RunConfig {
  GridConfig grid;
  std::size_t width = 3;
  std::size_t height = 3;
  ReinforcementMode reinforcement_mode = ReinforcementMode::Computed;
  // Forced mode: a single entry applies to every step, otherwise entry s
  // applies to step s and the list must cover n_steps.
  std::vector<Reinforcement> forced_schedule;
  std::size_t n_steps = 2000;
  std::string output_dir = "mlca_out";
  bool invert_pbm = false;
  bool parallel = false;

  // Cross-field checks on top of GridConfig::validate().
  void validate() const;
  ReinforcementSchedule schedule() const;

  bool operator==(const RunConfig&) const = default;
};

// Fills unspecified fields with defaults; unknown keys are rejected.
RunConfig config_from_json(const std::string& text);
std::string config_to_json(const RunConfig& config);

RunConfig load_config(const std::filesystem::path& path);
void save_config(const std::filesystem::path& path, const RunConfig& config);

}  // namespace mlca
