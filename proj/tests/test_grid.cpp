#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "mlca/edgeapp.hpp"
#include "mlca/grid.hpp"

using namespace mlca;

namespace {

BinaryImage ones(std::size_t h, std::size_t w) { return BinaryImage(h, w, 1); }

BinaryImage ones_except_se() {
  auto img = ones(3, 3);
  img(2, 2) = 0;
  return img;
}

// Learning window pinned far above (or below) the threshold so every
// selection is effectively deterministic.
GridConfig pinned_config(Action action) {
  GridConfig cfg;
  cfg.learning.v_min_volts = 0.01;
  cfg.learning.v_max_volts = 3.0;
  cfg.learning.v_neutral_volts = action == Action::Moore ? 2.5 : 0.02;
  return cfg;
}

BinaryImage ring3() {
  BinaryImage m(3, 3, 1);
  m(1, 1) = 0;
  return m;
}

}  // namespace

TEST_SUITE("grid") {
  TEST_CASE("gather_inputs with grounded boundary") {
    const GridConfig cfg;
    Grid g(ones(3, 3), cfg);

    const auto corner = g.gather_inputs(0, 0);
    CHECK(corner.orthogonal == std::array<double, 4>{0.0, 1.0, 1.0, 0.0});
    CHECK(corner.diagonal == std::array<double, 4>{0.0, 0.0, 1.0, 0.0});

    const auto center = g.gather_inputs(1, 1);
    CHECK(center.orthogonal == std::array<double, 4>{1.0, 1.0, 1.0, 1.0});
    CHECK(center.diagonal == std::array<double, 4>{1.0, 1.0, 1.0, 1.0});

    Grid se(ones_except_se(), cfg);
    const auto c = se.gather_inputs(1, 1);
    CHECK(c.diagonal[NeighborInputs::SE] == 0.0);
    CHECK(std::accumulate(c.orthogonal.begin(), c.orthogonal.end(), 0.0) +
              std::accumulate(c.diagonal.begin(), c.diagonal.end(), 0.0) ==
          7.0);

    CHECK_THROWS_AS(g.gather_inputs(3, 0), ValidationError);
    CHECK_THROWS_AS(g.gather_inputs(0, 3), ValidationError);
  }

  TEST_CASE("construction rejects bad inputs") {
    CHECK_THROWS_AS(Grid(BinaryImage{}, GridConfig{}), ValidationError);
    BinaryImage bad(2, 2, 1);
    bad(0, 1) = 2;
    CHECK_THROWS_AS(Grid(bad, GridConfig{}), ValidationError);
    GridConfig cfg;
    cfg.timing.read_voltage_volts = 0.7;
    CHECK_THROWS_AS(Grid(ones(2, 2), cfg), ValidationError);
  }

  TEST_CASE("step on the all-ones image marks the ring") {
    Grid g(ones(3, 3), GridConfig{});
    for (int k = 0; k < 50; ++k) CHECK(g.step().edge_map == ring3());
  }

  TEST_CASE("step on all-ones-except-SE follows the action") {
    Grid moore(ones_except_se(), pinned_config(Action::Moore));
    Grid vn(ones_except_se(), pinned_config(Action::VonNeumann));
    for (int k = 0; k < 50; ++k) {
      const auto tm = moore.step(Reinforcement::Neutral);
      const auto tv = vn.step(Reinforcement::Neutral);
      CHECK(tm.actions(1, 1) == Action::Moore);
      CHECK(tm.edge_map(1, 1) == 1);
      CHECK(tv.actions(1, 1) == Action::VonNeumann);
      CHECK(tv.edge_map(1, 1) == 0);
      CHECK(tm.edge_map(2, 2) == 0);
    }
  }

  TEST_CASE("compute_reinforcement") {
    Lattice<Action> all_moore(3, 3, Action::Moore);
    Lattice<Action> all_vn(3, 3, Action::VonNeumann);
    CHECK(compute_reinforcement(all_moore, 1, 1) == Reinforcement::RewardMoore);
    CHECK(compute_reinforcement(all_vn, 1, 1) == Reinforcement::RewardVonNeumann);
    auto mixed = all_moore;
    mixed(2, 2) = Action::VonNeumann;
    CHECK(compute_reinforcement(mixed, 1, 1) == Reinforcement::Neutral);
    CHECK(compute_reinforcement(mixed, 2, 2) == Reinforcement::Neutral);
    // (0,0) only sees (0,0),(0,1),(1,0),(1,1).
    CHECK(compute_reinforcement(mixed, 0, 0) == Reinforcement::RewardMoore);
    CHECK_THROWS_AS(compute_reinforcement(mixed, 3, 3), ValidationError);

    Lattice<Action> single(1, 1, Action::VonNeumann);
    CHECK(compute_reinforcement(single, 0, 0) == Reinforcement::RewardVonNeumann);
  }

  TEST_CASE("run") {
    SUBCASE("one step equals a step call") {
      GridConfig cfg;
      cfg.seed = 17;
      Grid a(ones_except_se(), cfg), b(ones_except_se(), cfg);
      const auto traces = a.run(1);
      REQUIRE(traces.size() == 1);
      CHECK(traces.front() == b.step());
    }
    SUBCASE("neutral run on all ones keeps the output image while actions vary") {
      Grid g(ones(3, 3), GridConfig{});
      const auto traces = g.run(20, ReinforcementSchedule::constant(Reinforcement::Neutral));
      REQUIRE(traces.size() == 20);
      bool varied = false;
      for (const auto& t : traces) {
        CHECK(t.edge_map == ring3());
        varied |= t.actions != traces.front().actions;
        for (auto r : t.reinforcement) CHECK(r == Reinforcement::Neutral);
      }
      CHECK(varied);
    }
    SUBCASE("neutral run hits the center edge half the time") {
      GridConfig cfg;
      cfg.seed = 2024;
      Grid g(ones_except_se(), cfg);
      const auto traces = g.run(10000, ReinforcementSchedule::constant(Reinforcement::Neutral));
      std::size_t hits = 0;
      for (const auto& t : traces) hits += t.edge_map(1, 1);
      CHECK(std::abs(hits / 10000.0 - 0.5) <= 0.02);
    }
    SUBCASE("errors") {
      Grid g(ones(2, 2), GridConfig{});
      CHECK_THROWS_AS(g.run(0), ValidationError);
      CHECK_THROWS_AS(g.run(3, ReinforcementSchedule::per_step({Reinforcement::Neutral})), ValidationError);
    }
    SUBCASE("per-step schedule applies entry s at step s") {
      Grid g(ones(2, 2), GridConfig{});
      const auto traces = g.run(3, ReinforcementSchedule::per_step({Reinforcement::RewardMoore, std::nullopt,
                                                                    Reinforcement::RewardVonNeumann}));
      CHECK(traces[0].reinforcement(0, 0) == Reinforcement::RewardMoore);
      CHECK(traces[2].reinforcement(1, 1) == Reinforcement::RewardVonNeumann);
    }
  }

  TEST_CASE("learning voltages follow forced schedules to the clamps") {
    Grid up(ones_except_se(), GridConfig{});
    const auto tu = up.run(30, ReinforcementSchedule::constant(Reinforcement::RewardMoore));
    CHECK(tu[0].v_learn(1, 1) == 1.025);
    CHECK(tu.back().v_learn(1, 1) == 1.3);
    Grid down(ones_except_se(), GridConfig{});
    const auto td = down.run(30, ReinforcementSchedule::constant(Reinforcement::RewardVonNeumann));
    CHECK(td.back().v_learn(0, 2) == 0.7);
  }

  TEST_CASE("synchrony: evaluation order and threading do not change traces") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
      NoiseStream img_noise(trial);
      const auto image = make_test_image(9, 13, 0.5, img_noise);
      for (FeedbackMode mode : {FeedbackMode::InitialImage, FeedbackMode::PreviousOutput}) {
        GridConfig cfg;
        cfg.seed = 1000 + trial;
        cfg.feedback_mode = mode;
        Grid seq(image, cfg), par(image, cfg), shuffled(image, cfg);

        std::vector<std::size_t> order(image.size());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);

        StepOptions par_opts;
        par_opts.execution = Execution::Parallel;
        par_opts.threads = 4;
        StepOptions shuf_opts;
        shuf_opts.order = order;

        const auto a = seq.run(25);
        const auto b = par.run(25, ReinforcementSchedule::computed(), par_opts);
        const auto c = shuffled.run(25, ReinforcementSchedule::computed(), shuf_opts);
        CHECK(a == b);
        CHECK(a == c);
      }
    }
  }

  TEST_CASE("determinism: same config and seed give identical traces, other seeds differ") {
    GridConfig cfg;
    cfg.seed = 5;
    Grid a(ones(4, 4), cfg), b(ones(4, 4), cfg);
    CHECK(a.run(40) == b.run(40));
    cfg.seed = 6;
    Grid c(ones(4, 4), cfg);
    auto other = cfg;
    other.seed = 5;
    Grid d(ones(4, 4), other);
    CHECK(c.run(40) != d.run(40));
  }

  TEST_CASE("border pixels of an all-ones image are always edges") {
    for (Action action : {Action::Moore, Action::VonNeumann}) {
      Grid g(ones(5, 7), pinned_config(action));
      for (int k = 0; k < 5; ++k) {
        const auto t = g.step();
        for (std::size_t j = 0; j < 7; ++j) CHECK((t.edge_map(0, j) == 1 && t.edge_map(4, j) == 1));
        for (std::size_t i = 0; i < 5; ++i) CHECK((t.edge_map(i, 0) == 1 && t.edge_map(i, 6) == 1));
      }
    }
  }

  TEST_CASE("previous-output feedback uses the latched outputs") {
    GridConfig cfg;
    cfg.feedback_mode = FeedbackMode::PreviousOutput;
    cfg.seed = 3;
    const auto image = ones(5, 5);
    Grid g(image, cfg);
    BinaryImage prev = image;
    for (int k = 0; k < 6; ++k) {
      const auto t = g.step();
      // Pixel gating uses the input image, the neighbour levels the last outputs.
      BinaryImage expected(5, 5, 0);
      for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
          bool any_low = false;
          for (int dr = -1; dr <= 1; ++dr) {
            for (int dc = -1; dc <= 1; ++dc) {
              if ((dr == 0 && dc == 0) || (t.actions(i, j) == Action::VonNeumann && dr != 0 && dc != 0)) continue;
              const long r = long(i) + dr, c = long(j) + dc;
              any_low |= !prev.contains(r, c) || prev(std::size_t(r), std::size_t(c)) == 0;
            }
          }
          expected(i, j) = image(i, j) && any_low ? 1 : 0;
        }
      }
      CHECK(t.edge_map == expected);
      prev = t.edge_map;
    }
  }
}
