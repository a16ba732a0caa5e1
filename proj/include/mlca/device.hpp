#pragma once

#include "mlca/random.hpp"

namespace mlca {

enum class ResistiveState { On, Off };

const char* to_string(ResistiveState s) noexcept;

// Electrical parameters of a two-state threshold memristor. Thresholds are
// resampled from a Gaussian on every write pulse (cycle-to-cycle variability).
struct DeviceParams {
  double r_on_ohms = 1.0e3;
  double r_off_ohms = 1.0e5;
  double set_threshold_mean_volts = 1.0;
  double set_threshold_sigma_volts = 0.1;
  double reset_threshold_mean_volts = -1.0;
  double reset_threshold_sigma_volts = 0.1;

  // Throws ValidationError unless r_off > r_on > 0, set mean > 0,
  // reset mean < 0 and both sigmas are >= 0.
  void validate() const;

  // Largest read amplitude that stays 4 sigma clear of either threshold.
  double read_margin() const noexcept;

  // Set / reset amplitudes 10 sigma beyond the mean threshold.
  double saturated_set_amplitude() const noexcept;
  double saturated_reset_amplitude() const noexcept;

  bool operator==(const DeviceParams&) const = default;
};

struct PulseOutcome {
  ResistiveState new_state;
  bool switched;
  // 0 V when no threshold was drawn (zero-amplitude pulse).
  double sampled_threshold;
};

class MemristorDevice {
public:
  explicit MemristorDevice(const DeviceParams& params = {}, ResistiveState initial = ResistiveState::Off);

  ResistiveState state() const noexcept { return state_; }
  const DeviceParams& params() const noexcept { return params_; }
  double resistance() const noexcept;

  double sample_set_threshold(NoiseStream& noise) const;
  double sample_reset_threshold(NoiseStream& noise) const;

  // Positive amplitudes set the device On when they exceed a freshly sampled
  // set threshold; negative amplitudes reset it Off when they fall below a
  // sampled reset threshold. A zero pulse draws nothing and changes nothing.
  PulseOutcome apply_write_pulse(double amplitude, NoiseStream& noise);

  // Analytic probability that a set pulse of this amplitude switches an Off
  // device On. Step function when the set sigma is zero.
  double switching_probability(double amplitude) const;

  // Non-destructive read. Throws DestructiveReadError when |read_voltage|
  // is not strictly inside read_margin().
  double read_resistance(double read_voltage) const;

  bool operator==(const MemristorDevice&) const = default;

private:
  DeviceParams params_;
  ResistiveState state_;
};

// Standard normal CDF.
double normal_cdf(double x) noexcept;

}  // namespace mlca
