#pragma once

#include <array>

#include "mlca/device.hpp"
#include "mlca/learning.hpp"
#include "mlca/random.hpp"

namespace mlca {

// Each timestep is split into a short read window followed by the write
// window in which the next state is computed.
struct PhaseTiming {
  double step_duration_seconds = 1.0e-5;
  double read_fraction = 0.1;
  // Amplitude of the read pulse applied to the state memristor.
  double read_voltage_volts = 0.3;

  double read_duration() const noexcept { return step_duration_seconds * read_fraction; }
  double write_duration() const noexcept { return step_duration_seconds - read_duration(); }

  void validate() const;

  bool operator==(const PhaseTiming&) const = default;
};

// Resistive averaging node V_m and the S3 comparator threshold.
struct MillmanConfig {
  double branch_resistance_ohms = 1.0e4;
  double v_high_volts = 1.0;
  double edge_threshold_volts = 0.9;

  void validate() const;
  // The VonNeumann weighting must still place "all four orthogonal inputs
  // high" strictly above the threshold: 1 / (1 + r_on/r_off) > threshold/v_high.
  void validate_against(const DeviceParams& m1) const;

  bool operator==(const MillmanConfig&) const = default;
};

// Order follows the usual compass listing: N, E, S, W and NE, NW, SE, SW.
struct NeighborInputs {
  std::array<double, 4> orthogonal{};
  std::array<double, 4> diagonal{};

  enum Orth { N = 0, E = 1, S = 2, W = 3 };
  enum Diag { NE = 0, NW = 1, SE = 2, SW = 3 };
};

struct CellRecord {
  MemristorDevice m1;  // neighbourhood selector
  MemristorDevice m2;  // edge state
  LearningState learning;
  double output_level = 0.0;
  bool pixel = false;

  bool is_edge() const noexcept { return m2.state() == ResistiveState::On; }
  Action action() const noexcept { return m1.state() == ResistiveState::On ? Action::Moore : Action::VonNeumann; }
};

// Re-arms M1 with a saturated reset pulse, then applies the LEARNING voltage
// as a set pulse. The final M1 state is the action.
Action select_neighborhood(CellRecord& cell, NoiseStream& noise);

// Conductance-weighted mean of the eight neighbour voltages. Diagonal
// branches weigh the same as orthogonal ones under Moore and are scaled by
// r_on/r_off under VonNeumann.
double millman_voltage(const NeighborInputs& inputs, Action action, const MillmanConfig& cfg,
                       const MemristorDevice& m1);

// M2 ends On (EDGE) iff the pixel is set and V_m does not exceed the S3
// threshold. Pulses are saturated, so the outcome does not depend on noise
// beyond a 10 sigma tail.
void write_state(CellRecord& cell, double v_m, const MillmanConfig& cfg, NoiseStream& noise);

// Non-destructive read of M2; latches and returns the output level.
double read_output(CellRecord& cell, const PhaseTiming& timing, const MillmanConfig& cfg);

}  // namespace mlca
