#include "mlca/learning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlca/errors.hpp"

namespace mlca {

const char* to_string(Action a) noexcept { return a == Action::Moore ? "moore" : "von_neumann"; }

const char* to_string(Reinforcement r) noexcept {
  switch (r) {
    case Reinforcement::RewardMoore: return "reward_moore";
    case Reinforcement::RewardVonNeumann: return "reward_von_neumann";
    case Reinforcement::Neutral: return "neutral";
  }
  return "neutral";
}

const char* to_string(MixedPolicy p) noexcept { return p == MixedPolicy::Hold ? "hold" : "decay_to_neutral"; }

Action action_from_string(const std::string& s) {
  if (s == "moore" || s == "m") return Action::Moore;
  if (s == "von_neumann" || s == "vn") return Action::VonNeumann;
  throw ValidationError("unknown action '" + s + "'");
}

Reinforcement reinforcement_from_string(const std::string& s) {
  if (s == "reward_moore") return Reinforcement::RewardMoore;
  if (s == "reward_von_neumann") return Reinforcement::RewardVonNeumann;
  if (s == "neutral") return Reinforcement::Neutral;
  throw ValidationError("unknown reinforcement '" + s + "'");
}

MixedPolicy mixed_policy_from_string(const std::string& s) {
  if (s == "hold") return MixedPolicy::Hold;
  if (s == "decay_to_neutral") return MixedPolicy::DecayToNeutral;
  throw ValidationError("unknown mixed policy '" + s + "'");
}

LearningParams LearningParams::defaults_for(const DeviceParams& m1) {
  LearningParams p;
  p.v_neutral_volts = m1.set_threshold_mean_volts;
  p.v_min_volts = m1.set_threshold_mean_volts - 3.0 * m1.set_threshold_sigma_volts;
  p.v_max_volts = m1.set_threshold_mean_volts + 3.0 * m1.set_threshold_sigma_volts;
  return p;
}

void LearningParams::validate() const {
  if (!std::isfinite(v_neutral_volts) || !std::isfinite(delta_v_volts) || !std::isfinite(v_min_volts) ||
      !std::isfinite(v_max_volts)) {
    throw ValidationError("learning parameters must be finite");
  }
  if (!(delta_v_volts > 0.0)) throw ValidationError("delta_v must be positive");
  if (!(v_min_volts > 0.0)) throw ValidationError("v_min must be positive (set-direction pulse)");
  if (!(v_min_volts <= v_neutral_volts && v_neutral_volts <= v_max_volts)) {
    throw ValidationError("v_neutral must lie within [v_min, v_max]");
  }
}

LearningState::LearningState(const LearningParams& params) : params_(params) { params_.validate(); }

double LearningState::v_learn() const noexcept {
  const double v = params_.v_neutral_volts + static_cast<double>(offset_) * params_.delta_v_volts;
  return std::clamp(v, params_.v_min_volts, params_.v_max_volts);
}

LearningState update_learning_voltage(LearningState state, Reinforcement signal) {
  switch (signal) {
    case Reinforcement::RewardMoore:
      if (!state.at_upper_clamp()) ++state.offset_;
      break;
    case Reinforcement::RewardVonNeumann:
      if (!state.at_lower_clamp()) --state.offset_;
      break;
    case Reinforcement::Neutral:
      if (state.params_.mixed_policy == MixedPolicy::DecayToNeutral && state.offset_ != 0) {
        state.offset_ += state.offset_ > 0 ? -1 : 1;
      }
      break;
  }
  return state;
}

double action_probability(const LearningState& state, const MemristorDevice& m1) {
  return m1.switching_probability(state.v_learn());
}

}  // namespace mlca
