#include "mlca/cell.hpp"

#include <cmath>
#include <numeric>

#include "mlca/errors.hpp"

namespace mlca {

void PhaseTiming::validate() const {
  if (!(step_duration_seconds > 0.0) || !std::isfinite(step_duration_seconds)) {
    throw ValidationError("step duration must be positive");
  }
  if (!(read_fraction > 0.0 && read_fraction < 1.0)) throw ValidationError("read fraction must lie in (0, 1)");
  if (!std::isfinite(read_voltage_volts)) throw ValidationError("read voltage must be finite");
}

void MillmanConfig::validate() const {
  if (!(branch_resistance_ohms > 0.0) || !std::isfinite(branch_resistance_ohms)) {
    throw ValidationError("branch resistance must be positive");
  }
  if (!(v_high_volts > 0.0) || !std::isfinite(v_high_volts)) throw ValidationError("v_high must be positive");
  if (!(edge_threshold_volts > 0.0 && edge_threshold_volts < v_high_volts)) {
    throw ValidationError("edge threshold must lie in (0, v_high)");
  }
  // Moore with a single low input sits at 7/8 of v_high; it must still count as an edge.
  if (!(edge_threshold_volts >= 0.875 * v_high_volts)) {
    throw ValidationError("edge threshold must be at least 7/8 of v_high");
  }
}

void MillmanConfig::validate_against(const DeviceParams& m1) const {
  const double ratio = m1.r_on_ohms / m1.r_off_ohms;
  if (!(1.0 / (1.0 + ratio) > edge_threshold_volts / v_high_volts)) {
    throw ValidationError("M1 r_on/r_off ratio " + std::to_string(ratio) +
                          " is too large to separate the neighbourhoods at the configured edge threshold");
  }
}

Action select_neighborhood(CellRecord& cell, NoiseStream& noise) {
  cell.m1.apply_write_pulse(cell.m1.params().saturated_reset_amplitude(), noise);
  cell.m1.apply_write_pulse(cell.learning.v_learn(), noise);
  return cell.action();
}

double millman_voltage(const NeighborInputs& inputs, Action action, const MillmanConfig& cfg,
                       const MemristorDevice& m1) {
  const double g_orth = 1.0 / cfg.branch_resistance_ohms;
  const double g_diag =
      action == Action::Moore ? g_orth : g_orth * (m1.params().r_on_ohms / m1.params().r_off_ohms);
  const double sum_orth = std::accumulate(inputs.orthogonal.begin(), inputs.orthogonal.end(), 0.0);
  const double sum_diag = std::accumulate(inputs.diagonal.begin(), inputs.diagonal.end(), 0.0);
  return (g_orth * sum_orth + g_diag * sum_diag) / (4.0 * g_orth + 4.0 * g_diag);
}

void write_state(CellRecord& cell, double v_m, const MillmanConfig& cfg, NoiseStream& noise) {
  const bool s3_closed = v_m <= cfg.edge_threshold_volts;
  const DeviceParams& p = cell.m2.params();
  if (cell.pixel && s3_closed) {
    cell.m2.apply_write_pulse(p.saturated_set_amplitude(), noise);
  } else {
    cell.m2.apply_write_pulse(p.saturated_reset_amplitude(), noise);
  }
}

double read_output(CellRecord& cell, const PhaseTiming& timing, const MillmanConfig& cfg) {
  const double r = cell.m2.read_resistance(timing.read_voltage_volts);
  cell.output_level = r == cell.m2.params().r_on_ohms ? cfg.v_high_volts : 0.0;
  return cell.output_level;
}

}  // namespace mlca
