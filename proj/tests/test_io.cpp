#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mlca/config.hpp"
#include "mlca/experiments.hpp"
#include "mlca/outputs.hpp"
#include "mlca/pbm.hpp"

using namespace mlca;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("mlca_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("pbm") {
  TEST_CASE("plain P1 parsing") {
    const auto img = parse_pbm("P1\n3 3\n1 1 1\n1 1 1\n1 1 1\n");
    CHECK(img == BinaryImage(3, 3, 1));

    const auto packed = parse_pbm("P1 # comment\n# another\n4 2\n0101\n1010");
    CHECK(packed(0, 1) == 1);
    CHECK(packed(1, 1) == 0);
    CHECK(packed(1, 0) == 1);

    const auto inverted = parse_pbm("P1 2 1 1 0", true);
    CHECK(inverted(0, 0) == 0);
    CHECK(inverted(0, 1) == 1);
  }

  TEST_CASE("malformed files are rejected") {
    CHECK_THROWS_AS(parse_pbm("P2\n1 1\n1\n"), ValidationError);
    CHECK_THROWS_AS(parse_pbm(""), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\n3 3\n1 1 1 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\n2 1\n1 1 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\n2 1\n1 2\n"), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\n0 3\n"), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\n99999999999999999999 1\n1"), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\n65536 65536\n1"), ValidationError);
    CHECK_THROWS_AS(parse_pbm("P1\nx 1\n1"), ValidationError);
    CHECK_THROWS_AS(parse_pbm(std::string("P4\n9 2\n\xff", 8)), ValidationError);
  }

  TEST_CASE("raw P4 bit packing") {
    // 10 pixels per row: two bytes, MSB first, padded.
    const std::string bytes = std::string("P4\n10 2\n") + std::string("\xA0\xC0\x00\x40", 4);
    const auto img = parse_pbm(bytes);
    CHECK(img(0, 0) == 1);
    CHECK(img(0, 1) == 0);
    CHECK(img(0, 2) == 1);
    CHECK(img(0, 8) == 1);
    CHECK(img(0, 9) == 1);
    CHECK(img(1, 9) == 1);
    CHECK(img(1, 8) == 0);
  }

  TEST_CASE("save/load round trip on random images") {
    const auto dir = scratch("pbm");
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> dim(1, 40);
    for (int k = 0; k < 40; ++k) {
      NoiseStream noise(k);
      const auto img = make_test_image(dim(rng), dim(rng), 0.5, noise);
      for (auto enc : {PbmEncoding::Plain, PbmEncoding::Raw}) {
        for (bool invert : {false, true}) {
          save_image(dir / "x.pbm", img, enc, invert);
          CHECK(load_image(dir / "x.pbm", invert) == img);
        }
      }
    }
    CHECK_THROWS_AS(load_image(dir / "missing.pbm"), IoError);
  }
}

TEST_SUITE("config") {
  TEST_CASE("defaults and overrides") {
    const auto cfg = config_from_json("{}");
    CHECK(cfg == RunConfig{});

    const auto custom = config_from_json(R"({
      "m1": {"set_threshold_mean_volts": 1.2, "set_threshold_sigma_volts": 0.05},
      "grid": {"width": 8, "height": 4, "feedback_mode": "previous_output"},
      "reinforcement": {"mode": "forced", "schedule": ["reward_moore"]},
      "n_steps": 10, "seed": 12345678901234
    })");
    CHECK(custom.grid.m1.set_threshold_mean_volts == 1.2);
    CHECK(custom.grid.learning.v_neutral_volts == 1.2);
    CHECK(custom.grid.learning.v_max_volts == doctest::Approx(1.35));
    CHECK(custom.width == 8);
    CHECK(custom.grid.feedback_mode == FeedbackMode::PreviousOutput);
    CHECK(custom.reinforcement_mode == ReinforcementMode::Forced);
    CHECK(custom.schedule().at(7) == Reinforcement::RewardMoore);
    CHECK(custom.grid.seed == 12345678901234ULL);
  }

  TEST_CASE("validation at load") {
    CHECK_THROWS_AS(config_from_json("{"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"m1": {"r_off_ohms": 5000}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"timing": {"read_voltage_volts": 0.65}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"learning": {"v_neutral_volts": 2.0}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"n_stpes": 3})"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"seed": "abc"})"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"reinforcement": {"mode": "forced"}})"), ValidationError);
    CHECK_THROWS_AS(config_from_json(R"({"reinforcement": {"mode": "forced", "schedule": ["neutral", "neutral"]}, "n_steps": 3})"),
                    ValidationError);
  }

  TEST_CASE("echoed config reloads to the same value") {
    RunConfig cfg;
    cfg.grid.m1.set_threshold_sigma_volts = 0.1234567890123;
    cfg.grid.learning = LearningParams::defaults_for(cfg.grid.m1);
    cfg.grid.learning.mixed_policy = MixedPolicy::DecayToNeutral;
    cfg.grid.seed = ~0ULL;
    cfg.reinforcement_mode = ReinforcementMode::Forced;
    cfg.forced_schedule = {Reinforcement::RewardVonNeumann};
    cfg.invert_pbm = true;
    CHECK(config_from_json(config_to_json(cfg)) == cfg);
  }
}

TEST_SUITE("outputs") {
  TEST_CASE("save_outputs writes frames, csv, summary and config") {
    const auto dir = scratch("out");
    auto cfg = fig3_config(Fig3Variant::B, 20, 3);
    const auto result = run_fig3(Fig3Variant::B, cfg);
    const auto files = save_outputs(result.run.traces, result.run.stats, cfg, dir, "fig3b");
    CHECK(files.edge_frames.size() == 20);
    CHECK(fs::exists(dir / "edge_00000.pbm"));
    CHECK(fs::exists(dir / "edge_00019.pbm"));
    CHECK(load_image(dir / "edge_00007.pbm") == result.run.traces[7].edge_map);

    std::ifstream csv(files.trace_csv);
    std::string line;
    std::size_t lines = 0;
    std::getline(csv, line);
    CHECK(line == "step,row,col,action,edge,v_learn,reinforcement");
    while (std::getline(csv, line)) ++lines;
    CHECK(lines == 20 * 9);

    CHECK(load_config(files.config_used) == cfg);
    CHECK(slurp(files.summary).find("\"edge_frequency\"") != std::string::npos);
  }

  TEST_CASE("empty traces write nothing") {
    const auto dir = scratch("empty") / "sub";
    RunStatistics stats;
    CHECK_THROWS_AS(save_outputs({}, stats, RunConfig{}, dir), ValidationError);
    CHECK_FALSE(fs::exists(dir));
  }

  TEST_CASE("identical config and seed give byte-identical csv; reloaded config reproduces it") {
    const auto dir = scratch("det");
    auto cfg = fig3_config(Fig3Variant::B, 50, 42);
    cfg.reinforcement_mode = ReinforcementMode::Computed;
    cfg.forced_schedule.clear();
    const auto a = run_fig3(Fig3Variant::B, cfg);
    const auto b = run_fig3(Fig3Variant::B, cfg);
    save_outputs(a.run.traces, a.run.stats, cfg, dir / "a");
    save_outputs(b.run.traces, b.run.stats, cfg, dir / "b");
    CHECK(slurp(dir / "a" / "trace.csv") == slurp(dir / "b" / "trace.csv"));

    const auto reloaded = load_config(dir / "a" / "config_used.json");
    const auto c = run_fig3(Fig3Variant::B, reloaded);
    save_outputs(c.run.traces, c.run.stats, reloaded, dir / "c");
    CHECK(slurp(dir / "a" / "trace.csv") == slurp(dir / "c" / "trace.csv"));
  }
}
