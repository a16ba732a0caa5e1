#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mlca/cell.hpp"
#include "mlca/lattice.hpp"

namespace mlca {

// InitialImage re-presents the input pixels as neighbour levels on every
// step. PreviousOutput feeds back the latched outputs of the last step.
enum class FeedbackMode { InitialImage, PreviousOutput };

const char* to_string(FeedbackMode m) noexcept;
FeedbackMode feedback_mode_from_string(const std::string& s);

struct GridConfig {
  DeviceParams m1;
  DeviceParams m2;
  LearningParams learning;
  MillmanConfig millman;
  PhaseTiming timing;
  FeedbackMode feedback_mode = FeedbackMode::InitialImage;
  std::uint64_t seed = 0;

  void validate() const;

  bool operator==(const GridConfig&) const = default;
};

// Everything one step produced. v_learn holds the voltage after this step's
// reinforcement, i.e. the value that drives the next selection.
struct StepTrace {
  std::size_t step_index = 0;
  Lattice<Action> actions;
  BinaryImage edge_map;
  Lattice<double> v_learn;
  Lattice<Reinforcement> reinforcement;

  bool operator==(const StepTrace&) const = default;
};

enum class Execution { Sequential, Parallel };

struct StepOptions {
  Execution execution = Execution::Sequential;
  // Worker count for Parallel; 0 picks max(2, hardware threads).
  unsigned threads = 0;
  // Optional evaluation order (a permutation of flat cell indices) used by
  // Sequential execution. Empty means row-major.
  std::span<const std::size_t> order{};
};

// Per-step forced signals. std::nullopt at a step means the environment
// computes the signal from neighbourhood consensus.
class ReinforcementSchedule {
public:
  static ReinforcementSchedule computed() { return {}; }
  static ReinforcementSchedule constant(Reinforcement signal);
  static ReinforcementSchedule per_step(std::vector<std::optional<Reinforcement>> signals);

  std::optional<Reinforcement> at(std::size_t step) const;
  // Number of explicit entries for a per-step schedule; unbounded otherwise.
  std::optional<std::size_t> length() const;

private:
  enum class Kind { Computed, Constant, PerStep };
  Kind kind_ = Kind::Computed;
  Reinforcement constant_ = Reinforcement::Neutral;
  std::vector<std::optional<Reinforcement>> signals_;
};

class Grid {
public:
  Grid(const BinaryImage& image, const GridConfig& config);

  std::size_t height() const noexcept { return cells_.height(); }
  std::size_t width() const noexcept { return cells_.width(); }
  std::size_t step_index() const noexcept { return step_index_; }
  const GridConfig& config() const noexcept { return config_; }
  const BinaryImage& image() const noexcept { return image_; }
  const Lattice<CellRecord>& cells() const noexcept { return cells_; }
  const CellRecord& cell(std::size_t row, std::size_t col) const { return cells_.at(row, col); }

  // Overwrites every cell's learning state, e.g. to start a run saturated.
  void set_learning(const LearningState& state);

  // Neighbour levels for cell (row, col); positions outside the grid are grounded.
  NeighborInputs gather_inputs(std::size_t row, std::size_t col) const;

  // One synchronous timestep: write phase (select, V_m, store), read phase
  // (latch outputs), then learning update from the override or consensus.
  StepTrace step(std::optional<Reinforcement> override_signal = std::nullopt, const StepOptions& options = {});

  std::vector<StepTrace> run(std::size_t n_steps, const ReinforcementSchedule& schedule = ReinforcementSchedule::computed(),
                             const StepOptions& options = {});

private:
  double input_level(std::ptrdiff_t row, std::ptrdiff_t col) const noexcept;

  GridConfig config_;
  BinaryImage image_;
  Lattice<CellRecord> cells_;
  std::size_t step_index_ = 0;
};

// Consensus over the cell and its in-grid Moore neighbours.
Reinforcement compute_reinforcement(const Lattice<Action>& actions, std::size_t row, std::size_t col);

}  // namespace mlca
