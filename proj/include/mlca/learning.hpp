#pragma once

#include <string>

#include "mlca/device.hpp"

namespace mlca {

// Moore <=> M1 On, VonNeumann <=> M1 Off.
enum class Action { VonNeumann, Moore };

enum class Reinforcement { RewardMoore, RewardVonNeumann, Neutral };

// How a Neutral signal (no consensus) moves the learning voltage.
enum class MixedPolicy { Hold, DecayToNeutral };

const char* to_string(Action a) noexcept;
const char* to_string(Reinforcement r) noexcept;
const char* to_string(MixedPolicy p) noexcept;
Action action_from_string(const std::string& s);
Reinforcement reinforcement_from_string(const std::string& s);
MixedPolicy mixed_policy_from_string(const std::string& s);

struct LearningParams {
  double v_neutral_volts = 1.0;
  double delta_v_volts = 0.025;
  double v_min_volts = 0.7;
  double v_max_volts = 1.3;
  MixedPolicy mixed_policy = MixedPolicy::Hold;

  // Neutral point at the M1 set-threshold mean, bounds at mean +/- 3 sigma.
  static LearningParams defaults_for(const DeviceParams& m1);

  // Throws ValidationError unless 0 < v_min <= v_neutral <= v_max and delta_v > 0.
  void validate() const;

  bool operator==(const LearningParams&) const = default;
};

// The per-cell learning automaton. The action probability vector is not
// stored; it is the image of the LEARNING voltage through the M1 threshold
// CDF (see action_probability). The voltage lives on the lattice
// v_neutral + k * delta_v, clipped to [v_min, v_max], so k identical rewards
// from neutral land exactly on min(v_neutral + k * delta_v, v_max).
class LearningState {
public:
  explicit LearningState(const LearningParams& params = {});

  double v_learn() const noexcept;
  long offset() const noexcept { return offset_; }
  const LearningParams& params() const noexcept { return params_; }

  bool at_upper_clamp() const noexcept { return v_learn() >= params_.v_max_volts; }
  bool at_lower_clamp() const noexcept { return v_learn() <= params_.v_min_volts; }

  bool operator==(const LearningState&) const = default;

private:
  friend LearningState update_learning_voltage(LearningState state, Reinforcement signal);

  LearningParams params_;
  long offset_ = 0;
};

LearningState update_learning_voltage(LearningState state, Reinforcement signal);

// Probability that this step's selection pulse lands on Moore.
double action_probability(const LearningState& state, const MemristorDevice& m1);

}  // namespace mlca
