#include "mlca/device.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mlca/errors.hpp"

namespace mlca {

const char* to_string(ResistiveState s) noexcept { return s == ResistiveState::On ? "on" : "off"; }

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

void DeviceParams::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(r_on_ohms) || !finite(r_off_ohms) || !finite(set_threshold_mean_volts) ||
      !finite(set_threshold_sigma_volts) || !finite(reset_threshold_mean_volts) ||
      !finite(reset_threshold_sigma_volts)) {
    throw ValidationError("device parameters must be finite");
  }
  if (!(r_on_ohms > 0.0)) throw ValidationError("r_on must be positive");
  if (!(r_off_ohms > r_on_ohms)) throw ValidationError("r_off must exceed r_on");
  if (!(set_threshold_mean_volts > 0.0)) throw ValidationError("set threshold mean must be positive");
  if (!(reset_threshold_mean_volts < 0.0)) throw ValidationError("reset threshold mean must be negative");
  if (set_threshold_sigma_volts < 0.0 || reset_threshold_sigma_volts < 0.0) {
    throw ValidationError("threshold sigma must be non-negative");
  }
}

double DeviceParams::read_margin() const noexcept {
  return std::min(set_threshold_mean_volts - 4.0 * set_threshold_sigma_volts,
                  -reset_threshold_mean_volts - 4.0 * reset_threshold_sigma_volts);
}

double DeviceParams::saturated_set_amplitude() const noexcept {
  return set_threshold_mean_volts + 10.0 * set_threshold_sigma_volts;
}

double DeviceParams::saturated_reset_amplitude() const noexcept {
  return reset_threshold_mean_volts - 10.0 * reset_threshold_sigma_volts;
}

MemristorDevice::MemristorDevice(const DeviceParams& params, ResistiveState initial)
    : params_(params), state_(initial) {
  params_.validate();
}

double MemristorDevice::resistance() const noexcept {
  return state_ == ResistiveState::On ? params_.r_on_ohms : params_.r_off_ohms;
}

double MemristorDevice::sample_set_threshold(NoiseStream& noise) const {
  if (params_.set_threshold_sigma_volts == 0.0) return params_.set_threshold_mean_volts;
  std::normal_distribution<double> dist(params_.set_threshold_mean_volts, params_.set_threshold_sigma_volts);
  return dist(noise);
}

double MemristorDevice::sample_reset_threshold(NoiseStream& noise) const {
  if (params_.reset_threshold_sigma_volts == 0.0) return params_.reset_threshold_mean_volts;
  std::normal_distribution<double> dist(params_.reset_threshold_mean_volts, params_.reset_threshold_sigma_volts);
  return dist(noise);
}

PulseOutcome MemristorDevice::apply_write_pulse(double amplitude, NoiseStream& noise) {
  if (!std::isfinite(amplitude)) throw ValidationError("write pulse amplitude must be finite");
  const ResistiveState prior = state_;
  double threshold = 0.0;
  if (amplitude > 0.0) {
    threshold = sample_set_threshold(noise);
    if (amplitude > threshold) state_ = ResistiveState::On;
  } else if (amplitude < 0.0) {
    threshold = sample_reset_threshold(noise);
    if (amplitude < threshold) state_ = ResistiveState::Off;
  }
  return {state_, state_ != prior, threshold};
}

double MemristorDevice::switching_probability(double amplitude) const {
  if (!(amplitude > 0.0)) {
    throw ValidationError("switching_probability expects a positive set amplitude, got " +
                          std::to_string(amplitude));
  }
  const double mean = params_.set_threshold_mean_volts;
  const double sigma = params_.set_threshold_sigma_volts;
  if (sigma == 0.0) return amplitude > mean ? 1.0 : 0.0;
  return normal_cdf((amplitude - mean) / sigma);
}

double MemristorDevice::read_resistance(double read_voltage) const {
  const double margin = params_.read_margin();
  if (!(margin > 0.0)) throw DestructiveReadError("device has no non-destructive read window");
  if (!(std::abs(read_voltage) < margin)) {
    throw DestructiveReadError("read voltage " + std::to_string(read_voltage) +
                               " V exceeds the non-destructive margin of " + std::to_string(margin) + " V");
  }
  return resistance();
}

}  // namespace mlca
