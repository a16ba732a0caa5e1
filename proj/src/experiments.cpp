#include "mlca/experiments.hpp"

namespace mlca {

Fig3Variant fig3_variant_from_string(const std::string& s) {
  if (s == "a") return Fig3Variant::A;
  if (s == "b") return Fig3Variant::B;
  if (s == "c") return Fig3Variant::C;
  if (s == "d") return Fig3Variant::D;
  throw ValidationError("unknown variant '" + s + "' (expected a, b, c or d)");
}

const char* to_string(Fig3Variant v) noexcept {
  switch (v) {
    case Fig3Variant::A: return "a";
    case Fig3Variant::B: return "b";
    case Fig3Variant::C: return "c";
    case Fig3Variant::D: return "d";
  }
  return "a";
}

BinaryImage fig3_image(Fig3Variant variant) {
  BinaryImage img(3, 3, 1);
  if (variant != Fig3Variant::A) img(2, 2) = 0;
  return img;
}

namespace {

Reinforcement fig3_signal(Fig3Variant variant) {
  switch (variant) {
    case Fig3Variant::C: return Reinforcement::RewardMoore;
    case Fig3Variant::D: return Reinforcement::RewardVonNeumann;
    default: return Reinforcement::Neutral;
  }
}

}  // namespace

ReinforcementSchedule fig3_schedule(Fig3Variant variant) {
  return ReinforcementSchedule::constant(fig3_signal(variant));
}

RunConfig fig3_config(Fig3Variant variant, std::size_t n_steps, std::uint64_t seed) {
  RunConfig cfg;
  cfg.grid.learning = LearningParams::defaults_for(cfg.grid.m1);
  cfg.grid.seed = seed;
  cfg.width = 3;
  cfg.height = 3;
  cfg.n_steps = n_steps;
  cfg.reinforcement_mode = ReinforcementMode::Forced;
  cfg.forced_schedule = {fig3_signal(variant)};
  cfg.output_dir = std::string("fig3") + to_string(variant);
  return cfg;
}

ScenarioResult run_scenario(const BinaryImage& image, const RunConfig& config) {
  config.validate();
  Grid grid(image, config.grid);
  StepOptions options;
  options.execution = config.parallel ? Execution::Parallel : Execution::Sequential;
  ScenarioResult out;
  out.traces = grid.run(config.n_steps, config.schedule(), options);
  out.stats = summarize_run(out.traces);
  for (const auto& c : grid.cells()) out.final_learning.push_back(c.learning);
  return out;
}

Fig3Result run_fig3(Fig3Variant variant, const RunConfig& config) {
  Fig3Result r;
  r.run = run_scenario(fig3_image(variant), config);
  r.center_edge_frequency = r.run.stats.edge_frequency(1, 1);
  r.center_final_v_learn = r.run.final_learning[4].v_learn();
  return r;
}

std::vector<SweepRow> sweep_switching(const DeviceParams& device, double low, double high, std::size_t points,
                                      std::size_t trials, std::uint64_t seed) {
  if (points < 2 || !(high > low) || trials == 0) throw ValidationError("sweep needs points >= 2, high > low, trials > 0");
  const MemristorDevice prototype(device, ResistiveState::Off);
  std::vector<SweepRow> rows;
  for (std::size_t p = 0; p < points; ++p) {
    const double amp = low + (high - low) * static_cast<double>(p) / static_cast<double>(points - 1);
    NoiseStream noise(seed, p, 0);
    std::size_t hits = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      MemristorDevice dev = prototype;
      hits += dev.apply_write_pulse(amp, noise).switched ? 1 : 0;
    }
    rows.push_back({amp, prototype.switching_probability(amp), static_cast<double>(hits) / static_cast<double>(trials)});
  }
  return rows;
}

}  // namespace mlca
