#include "mlca/grid.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace mlca {

const char* to_string(FeedbackMode m) noexcept {
  return m == FeedbackMode::InitialImage ? "initial_image" : "previous_output";
}

FeedbackMode feedback_mode_from_string(const std::string& s) {
  if (s == "initial_image") return FeedbackMode::InitialImage;
  if (s == "previous_output") return FeedbackMode::PreviousOutput;
  throw ValidationError("unknown feedback mode '" + s + "'");
}

void GridConfig::validate() const {
  m1.validate();
  m2.validate();
  learning.validate();
  timing.validate();
  millman.validate();
  millman.validate_against(m1);
  if (!(std::abs(timing.read_voltage_volts) < m2.read_margin())) {
    throw ValidationError("read voltage " + std::to_string(timing.read_voltage_volts) +
                          " V is outside the state memristor's non-destructive margin");
  }
}

ReinforcementSchedule ReinforcementSchedule::constant(Reinforcement signal) {
  ReinforcementSchedule s;
  s.kind_ = Kind::Constant;
  s.constant_ = signal;
  return s;
}

ReinforcementSchedule ReinforcementSchedule::per_step(std::vector<std::optional<Reinforcement>> signals) {
  ReinforcementSchedule s;
  s.kind_ = Kind::PerStep;
  s.signals_ = std::move(signals);
  return s;
}

std::optional<Reinforcement> ReinforcementSchedule::at(std::size_t step) const {
  switch (kind_) {
    case Kind::Computed: return std::nullopt;
    case Kind::Constant: return constant_;
    case Kind::PerStep:
      if (step >= signals_.size()) throw ValidationError("reinforcement schedule shorter than the run");
      return signals_[step];
  }
  return std::nullopt;
}

std::optional<std::size_t> ReinforcementSchedule::length() const {
  if (kind_ == Kind::PerStep) return signals_.size();
  return std::nullopt;
}

Grid::Grid(const BinaryImage& image, const GridConfig& config) : config_(config), image_(image) {
  config_.validate();
  if (image_.empty()) throw ValidationError("grid needs at least one cell");
  for (auto px : image_) {
    if (px > 1) throw ValidationError("image pixels must be 0 or 1");
  }
  const CellRecord prototype{MemristorDevice(config_.m1), MemristorDevice(config_.m2),
                             LearningState(config_.learning), 0.0, false};
  cells_ = Lattice<CellRecord>(image_.height(), image_.width(), prototype);
  for (std::size_t k = 0; k < cells_.size(); ++k) {
    cells_[k].pixel = image_[k] != 0;
    cells_[k].output_level = cells_[k].pixel ? config_.millman.v_high_volts : 0.0;
  }
}

void Grid::set_learning(const LearningState& state) {
  for (auto& c : cells_) c.learning = state;
}

double Grid::input_level(std::ptrdiff_t row, std::ptrdiff_t col) const noexcept {
  if (!cells_.contains(row, col)) return 0.0;
  const auto r = static_cast<std::size_t>(row);
  const auto c = static_cast<std::size_t>(col);
  if (config_.feedback_mode == FeedbackMode::PreviousOutput) return cells_(r, c).output_level;
  return image_(r, c) ? config_.millman.v_high_volts : 0.0;
}

NeighborInputs Grid::gather_inputs(std::size_t row, std::size_t col) const {
  (void)cells_.at(row, col);
  const auto r = static_cast<std::ptrdiff_t>(row);
  const auto c = static_cast<std::ptrdiff_t>(col);
  NeighborInputs in;
  in.orthogonal[NeighborInputs::N] = input_level(r - 1, c);
  in.orthogonal[NeighborInputs::E] = input_level(r, c + 1);
  in.orthogonal[NeighborInputs::S] = input_level(r + 1, c);
  in.orthogonal[NeighborInputs::W] = input_level(r, c - 1);
  in.diagonal[NeighborInputs::NE] = input_level(r - 1, c + 1);
  in.diagonal[NeighborInputs::NW] = input_level(r - 1, c - 1);
  in.diagonal[NeighborInputs::SE] = input_level(r + 1, c + 1);
  in.diagonal[NeighborInputs::SW] = input_level(r + 1, c - 1);
  return in;
}

namespace {

// Runs fn(flat_index) for every cell; returns only after all calls finished
// (the phase barrier).
template <typename Fn>
void for_each_cell(std::size_t count, const StepOptions& options, Fn&& fn) {
  if (options.execution == Execution::Sequential) {
    if (options.order.empty()) {
      for (std::size_t k = 0; k < count; ++k) fn(k);
    } else {
      if (options.order.size() != count) throw ValidationError("evaluation order must cover every cell");
      for (std::size_t k : options.order) fn(k);
    }
    return;
  }

  unsigned workers = options.threads;
  if (workers == 0) workers = std::max(2u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));

  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t k = w; k < count; k += workers) fn(k);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

StepTrace Grid::step(std::optional<Reinforcement> override_signal, const StepOptions& options) {
  const std::size_t h = height();
  const std::size_t w = width();
  const std::size_t t = step_index_;

  StepTrace trace;
  trace.step_index = t;
  trace.actions = Lattice<Action>(h, w, Action::VonNeumann);
  trace.edge_map = BinaryImage(h, w, 0);
  trace.v_learn = Lattice<double>(h, w, 0.0);
  trace.reinforcement = Lattice<Reinforcement>(h, w, Reinforcement::Neutral);

  // Write phase. Cells only touch their own devices here; neighbour levels
  // come from the image or from outputs latched in the previous read phase.
  for_each_cell(cells_.size(), options, [&](std::size_t k) {
    const std::size_t row = k / w;
    const std::size_t col = k % w;
    CellRecord& cell = cells_[k];
    NoiseStream noise(config_.seed, k, t);
    const Action action = select_neighborhood(cell, noise);
    const double v_m = millman_voltage(gather_inputs(row, col), action, config_.millman, cell.m1);
    write_state(cell, v_m, config_.millman, noise);
    trace.actions[k] = action;
  });

  // Read phase.
  for_each_cell(cells_.size(), options, [&](std::size_t k) {
    CellRecord& cell = cells_[k];
    read_output(cell, config_.timing, config_.millman);
    trace.edge_map[k] = cell.is_edge() ? 1 : 0;
  });

  // Environment response.
  for_each_cell(cells_.size(), options, [&](std::size_t k) {
    const Reinforcement signal =
        override_signal ? *override_signal : compute_reinforcement(trace.actions, k / w, k % w);
    CellRecord& cell = cells_[k];
    cell.learning = update_learning_voltage(cell.learning, signal);
    trace.reinforcement[k] = signal;
    trace.v_learn[k] = cell.learning.v_learn();
  });

  ++step_index_;
  return trace;
}

std::vector<StepTrace> Grid::run(std::size_t n_steps, const ReinforcementSchedule& schedule,
                                 const StepOptions& options) {
  if (n_steps == 0) throw ValidationError("run needs at least one step");
  if (auto len = schedule.length(); len && *len < n_steps) {
    throw ValidationError("reinforcement schedule has " + std::to_string(*len) + " entries for " +
                          std::to_string(n_steps) + " steps");
  }
  std::vector<StepTrace> traces;
  traces.reserve(n_steps);
  for (std::size_t s = 0; s < n_steps; ++s) traces.push_back(step(schedule.at(s), options));
  return traces;
}

Reinforcement compute_reinforcement(const Lattice<Action>& actions, std::size_t row, std::size_t col) {
  const Action own = actions.at(row, col);
  const auto r0 = static_cast<std::ptrdiff_t>(row);
  const auto c0 = static_cast<std::ptrdiff_t>(col);
  for (std::ptrdiff_t dr = -1; dr <= 1; ++dr) {
    for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
      if (!actions.contains(r0 + dr, c0 + dc)) continue;
      if (actions(static_cast<std::size_t>(r0 + dr), static_cast<std::size_t>(c0 + dc)) != own) {
        return Reinforcement::Neutral;
      }
    }
  }
  return own == Action::Moore ? Reinforcement::RewardMoore : Reinforcement::RewardVonNeumann;
}

}  // namespace mlca
