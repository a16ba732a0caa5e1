#include <cmath>
#include <random>

#include "doctest.h"
#include "mlca/edgeapp.hpp"

using namespace mlca;

namespace {

Lattice<Action> random_actions(std::size_t h, std::size_t w, std::mt19937_64& rng) {
  Lattice<Action> a(h, w, Action::VonNeumann);
  std::bernoulli_distribution coin(0.5);
  for (auto& x : a) x = coin(rng) ? Action::Moore : Action::VonNeumann;
  return a;
}

}  // namespace

TEST_SUITE("edgeapp") {
  TEST_CASE("oracle_edges examples") {
    const BinaryImage all(3, 3, 1);
    BinaryImage ring(3, 3, 1);
    ring(1, 1) = 0;
    std::mt19937_64 rng(1);
    for (int k = 0; k < 20; ++k) CHECK(oracle_edges(all, random_actions(3, 3, rng)) == ring);

    const BinaryImage dark(4, 5, 0);
    CHECK(oracle_edges(dark, Action::Moore) == dark);

    BinaryImage se = all;
    se(2, 2) = 0;
    CHECK(oracle_edges(se, Action::Moore)(1, 1) == 1);
    CHECK(oracle_edges(se, Action::VonNeumann)(1, 1) == 0);
    CHECK(oracle_edges(se, Action::Moore)(2, 2) == 0);

    CHECK_THROWS_AS(oracle_edges(all, Lattice<Action>(2, 3)), ValidationError);
  }

  TEST_CASE("oracle ignores diagonals under von Neumann") {
    // Clear one diagonal neighbour of an interior pixel at a time.
    BinaryImage base(5, 5, 1);
    const auto ref = oracle_edges(base, Action::VonNeumann);
    for (auto [dr, dc] : {std::pair{-1, -1}, {-1, 1}, {1, -1}, {1, 1}}) {
      BinaryImage img = base;
      img(std::size_t(2 + dr), std::size_t(2 + dc)) = 0;
      CHECK(oracle_edges(img, Action::VonNeumann)(2, 2) == ref(2, 2));
      CHECK(oracle_edges(img, Action::Moore)(2, 2) == 1);
    }
  }

  TEST_CASE("compare_maps") {
    const BinaryImage a(3, 3, 1), b(3, 3, 0);
    CHECK(compare_maps(a, a).mismatches == 0);
    const auto diff = compare_maps(a, b);
    CHECK(diff.mismatches == 9);
    CHECK(diff.positions.front() == std::pair<std::size_t, std::size_t>{0, 0});
    BinaryImage c = a;
    c(1, 2) = 0;
    const auto one = compare_maps(a, c);
    REQUIRE(one.mismatches == 1);
    CHECK(one.positions[0] == std::pair<std::size_t, std::size_t>{1, 2});
    CHECK_THROWS_AS(compare_maps(a, BinaryImage(3, 4)), ValidationError);
  }

  TEST_CASE("grid edge maps equal the oracle at every step") {
    std::mt19937_64 rng(2026);
    std::uniform_int_distribution<std::size_t> dim(1, 64);
    std::uniform_real_distribution<double> density(0.2, 0.9);
    std::size_t steps_checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
      NoiseStream img_noise(rng());
      const auto image = make_test_image(dim(rng), dim(rng), density(rng), img_noise);
      GridConfig cfg;
      cfg.seed = rng();
      Grid g(image, cfg);
      for (const auto& t : g.run(8)) {
        CHECK(compare_maps(t.edge_map, oracle_edges(image, t.actions)).mismatches == 0);
        ++steps_checked;
      }
    }
    CHECK(steps_checked == 480);
  }

  TEST_CASE("summarize_run") {
    GridConfig cfg;
    cfg.learning.v_neutral_volts = 1.3;
    BinaryImage img(3, 3, 1);
    img(2, 2) = 0;

    SUBCASE("Moore-saturated run") {
      cfg.learning.v_max_volts = 3.0;
      cfg.learning.v_neutral_volts = 2.5;
      Grid g(img, cfg);
      const auto traces = g.run(200, ReinforcementSchedule::constant(Reinforcement::Neutral));
      const auto stats = summarize_run(traces);
      for (double f : stats.moore_frequency) CHECK(f == 1.0);
      CHECK(stats.edge_frequency(1, 1) == 1.0);
      CHECK(stats.edge_frequency(2, 2) == 0.0);
      CHECK(stats.v_learn_paths(0, 0).size() == 200);
    }
    SUBCASE("windows") {
      Grid g(img, cfg);
      const auto traces = g.run(50);
      const auto stats = summarize_run(traces, StepWindow{10, 30});
      CHECK(stats.window.length() == 20);
      CHECK(stats.v_learn_paths(1, 1).size() == 20);
      for (double f : stats.edge_frequency) CHECK((f >= 0.0 && f <= 1.0));
      CHECK_THROWS_AS(summarize_run(traces, StepWindow{5, 5}), ValidationError);
      CHECK_THROWS_AS(summarize_run(traces, StepWindow{0, 51}), ValidationError);
    }
  }

  TEST_CASE("neutral run reproduces the half-edge center statistic") {
    GridConfig cfg;
    cfg.seed = 99;
    BinaryImage img(3, 3, 1);
    img(2, 2) = 0;
    Grid g(img, cfg);
    const auto stats = summarize_run(g.run(10000, ReinforcementSchedule::constant(Reinforcement::Neutral)));
    CHECK(std::abs(stats.edge_frequency(1, 1) - 0.5) <= 0.02);
  }

  TEST_CASE("forced Moore reward raises the Moore frequency window by window") {
    // 12 reward steps reach the clamp; compare 2-step windows across many cells.
    constexpr std::size_t kSteps = 12;
    constexpr std::size_t kWindow = 2;
    std::vector<double> moore(kSteps, 0.0);
    double samples = 0.0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      GridConfig cfg;
      cfg.seed = seed;
      Grid g(BinaryImage(16, 16, 1), cfg);
      const auto traces = g.run(kSteps, ReinforcementSchedule::constant(Reinforcement::RewardMoore));
      for (std::size_t s = 0; s < kSteps; ++s)
        for (auto a : traces[s].actions) moore[s] += a == Action::Moore ? 1.0 : 0.0;
      samples += 256.0;
    }
    std::vector<double> window_freq;
    for (std::size_t w = 0; w + kWindow <= kSteps; w += kWindow) {
      window_freq.push_back((moore[w] + moore[w + 1]) / (kWindow * samples));
    }
    const double n = kWindow * samples;
    for (std::size_t w = 1; w < window_freq.size(); ++w) {
      const double se = std::sqrt(0.25 / n) * std::sqrt(2.0);
      CAPTURE(w);
      CHECK(window_freq[w] >= window_freq[w - 1] - 4.0 * se);
    }
    CHECK(window_freq.front() < 0.6);
    CHECK(window_freq.back() > 0.95);
  }

  TEST_CASE("sustained consensus drives a uniform region onto a clamp") {
    // On 1x1 and 2x2 grids every cell's consensus neighbourhood is the whole
    // grid, so consensus is shared and sustained.
    for (std::size_t side : {1, 2}) {
      for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        GridConfig cfg;
        cfg.seed = seed;
        Grid g(BinaryImage(side, side, 1), cfg);
        const auto traces = g.run(4000);
        const auto stats = summarize_run(traces, StepWindow{3000, 4000});
        CAPTURE(side);
        CAPTURE(seed);
        for (auto c : converged_cells(stats, cfg.learning)) CHECK(c == 1);
        for (const auto& cell : g.cells()) CHECK((cell.learning.at_upper_clamp() || cell.learning.at_lower_clamp()));
      }
    }
  }

  TEST_CASE("a region clamped on one action stays there") {
    for (Reinforcement push : {Reinforcement::RewardMoore, Reinforcement::RewardVonNeumann}) {
      GridConfig cfg;
      cfg.seed = 12;
      Grid g(BinaryImage(6, 6, 1), cfg);
      g.run(20, ReinforcementSchedule::constant(push));
      const auto traces = g.run(2000);
      const auto stats = summarize_run(traces);
      for (auto c : converged_cells(stats, cfg.learning)) CHECK(c == 1);
    }
  }

  TEST_CASE("make_test_image is binary, shaped and seed-determined") {
    NoiseStream a(4), b(4);
    const auto x = make_test_image(10, 20, 0.5, a);
    const auto y = make_test_image(10, 20, 0.5, b);
    CHECK(x == y);
    CHECK(x.height() == 10);
    CHECK(x.width() == 20);
    for (auto px : x) CHECK(px <= 1);
  }
}
