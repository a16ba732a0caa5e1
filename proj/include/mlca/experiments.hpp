#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mlca/config.hpp"
#include "mlca/edgeapp.hpp"

namespace mlca {

// 3x3 demonstration scenarios:
//   A  all-ones image, neutral signal
//   B  all-ones except the SE pixel, neutral signal
//   C  as B, reward-Moore forced every step
//   D  as B, reward-von-Neumann forced every step
enum class Fig3Variant { A, B, C, D };

Fig3Variant fig3_variant_from_string(const std::string& s);
const char* to_string(Fig3Variant v) noexcept;

BinaryImage fig3_image(Fig3Variant variant);
ReinforcementSchedule fig3_schedule(Fig3Variant variant);
// Default config for a variant: 3x3 grid, forced schedule per variant.
RunConfig fig3_config(Fig3Variant variant, std::size_t n_steps = 2000, std::uint64_t seed = 0);

struct ScenarioResult {
  std::vector<StepTrace> traces;
  RunStatistics stats;
  std::vector<LearningState> final_learning;  // row-major
};

ScenarioResult run_scenario(const BinaryImage& image, const RunConfig& config);

struct Fig3Result {
  ScenarioResult run;
  double center_edge_frequency = 0.0;
  double center_final_v_learn = 0.0;
};

Fig3Result run_fig3(Fig3Variant variant, const RunConfig& config);

struct SweepRow {
  double amplitude;
  double analytic;
  double empirical;
};

// Empirical vs analytic set-switching probability of an Off device at
// `points` evenly spaced amplitudes in [low, high].
std::vector<SweepRow> sweep_switching(const DeviceParams& device, double low, double high, std::size_t points,
                                      std::size_t trials, std::uint64_t seed);

}  // namespace mlca
