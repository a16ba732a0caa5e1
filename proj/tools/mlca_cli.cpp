// Command-line driver for the memristive learning CA simulator.
//
//   mlca reproduce-fig3 <a|b|c|d> [--config F] [--seed N] [--steps N] [--out DIR]
//   mlca run --image IMG.pbm [--config F] [--seed N] [--steps N] [--out DIR]
//   mlca oracle --image IMG.pbm --action moore|vn [--out FILE]
//   mlca sweep-vlearn [--config F] [--points N] [--trials N] [--seed N] [--out FILE]
//
// Exit status: 0 success, 1 validation error, 2 I/O error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mlca/config.hpp"
#include "mlca/experiments.hpp"
#include "mlca/outputs.hpp"
#include "mlca/pbm.hpp"

namespace {

constexpr int kValidationError = 1;
constexpr int kIoError = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> steps;
  std::string out;
  bool parallel = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "JSON run configuration");
  cmd->add_option("--seed", f.seed, "Root seed (overrides config)");
  cmd->add_option("--steps", f.steps, "Number of timesteps (overrides config)")->check(CLI::PositiveNumber);
  cmd->add_option("--out", f.out, "Output directory (overrides config)");
  cmd->add_flag("--parallel", f.parallel, "Evaluate cells on worker threads");
}

void apply_common(mlca::RunConfig& cfg, const CommonFlags& f) {
  if (f.seed) cfg.grid.seed = *f.seed;
  if (f.steps) cfg.n_steps = *f.steps;
  if (!f.out.empty()) cfg.output_dir = f.out;
  if (f.parallel) cfg.parallel = true;
}

int reproduce_fig3(const std::string& variant_name, const CommonFlags& flags) {
  const auto variant = mlca::fig3_variant_from_string(variant_name);
  mlca::RunConfig cfg = mlca::fig3_config(variant);
  if (!flags.config.empty()) {
    const auto base = mlca::load_config(flags.config);
    cfg.grid = base.grid;
    cfg.n_steps = base.n_steps;
    cfg.parallel = base.parallel;
  }
  apply_common(cfg, flags);
  cfg.validate();

  const auto result = mlca::run_fig3(variant, cfg);
  const mlca::SummaryFields extra = {{"center_edge_frequency", result.center_edge_frequency},
                                     {"center_final_v_learn", result.center_final_v_learn}};
  mlca::save_outputs(result.run.traces, result.run.stats, cfg, cfg.output_dir,
                     std::string("fig3") + mlca::to_string(variant), extra);

  std::printf("variant %s: %zu steps, seed %llu\n", mlca::to_string(variant), cfg.n_steps,
              static_cast<unsigned long long>(cfg.grid.seed));
  std::printf("center edge frequency: %.4f\n", result.center_edge_frequency);
  std::printf("center Moore frequency: %.4f\n", result.run.stats.moore_frequency(1, 1));
  std::printf("center final v_learn: %.4f V\n", result.center_final_v_learn);
  std::printf("outputs written to %s\n", cfg.output_dir.c_str());
  return 0;
}

int run_general(const std::string& image_path, const CommonFlags& flags) {
  mlca::RunConfig cfg;
  if (!flags.config.empty()) cfg = mlca::load_config(flags.config);
  apply_common(cfg, flags);
  const auto image = mlca::load_image(image_path, cfg.invert_pbm);
  cfg.width = image.width();
  cfg.height = image.height();
  cfg.validate();

  const auto result = mlca::run_scenario(image, cfg);
  mlca::save_outputs(result.traces, result.stats, cfg, cfg.output_dir, "run");

  std::size_t converged = 0;
  for (auto c : mlca::converged_cells(result.stats, cfg.grid.learning)) converged += c;
  std::printf("%zux%zu grid, %zu steps, seed %llu\n", cfg.height, cfg.width, cfg.n_steps,
              static_cast<unsigned long long>(cfg.grid.seed));
  std::printf("cells at a clamp with >= 0.99 action frequency: %zu of %zu\n", converged, image.size());
  std::printf("outputs written to %s\n", cfg.output_dir.c_str());
  return 0;
}

int run_oracle(const std::string& image_path, const std::string& action, const std::string& out, bool invert) {
  const auto image = mlca::load_image(image_path, invert);
  const auto edges = mlca::oracle_edges(image, mlca::action_from_string(action));
  if (out.empty()) {
    mlca::write_pbm(std::cout, edges);
  } else {
    mlca::save_image(out, edges);
  }
  return 0;
}

int run_sweep(const CommonFlags& flags, std::size_t points, std::size_t trials) {
  mlca::RunConfig cfg;
  if (!flags.config.empty()) cfg = mlca::load_config(flags.config);
  apply_common(cfg, flags);
  const auto& lp = cfg.grid.learning;
  const auto rows = mlca::sweep_switching(cfg.grid.m1, lp.v_min_volts, lp.v_max_volts, points, trials, cfg.grid.seed);

  std::ofstream file;
  if (!flags.out.empty()) {
    file.open(flags.out);
    if (!file) throw mlca::IoError("cannot write " + flags.out);
  }
  std::ostream& os = flags.out.empty() ? std::cout : file;
  os << "v_learn,analytic,empirical,abs_diff\n";
  for (const auto& r : rows) {
    os << mlca::format_double(r.amplitude) << ',' << mlca::format_double(r.analytic) << ','
       << mlca::format_double(r.empirical) << ',' << mlca::format_double(std::abs(r.empirical - r.analytic))
       << '\n';
  }
  if (!os) throw mlca::IoError("failed writing sweep table");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Memristive learning cellular automata simulator"};
  app.require_subcommand(1);

  CommonFlags fig3_flags;
  std::string variant;
  auto* fig3 = app.add_subcommand("reproduce-fig3", "Run one of the 3x3 demonstration scenarios");
  fig3->add_option("variant", variant, "a | b | c | d")->required();
  add_common(fig3, fig3_flags);

  CommonFlags run_flags;
  std::string run_image;
  auto* run = app.add_subcommand("run", "Run a learning simulation on a PBM image");
  run->add_option("--image", run_image, "Input PBM (P1/P4)")->required();
  add_common(run, run_flags);

  std::string oracle_image, oracle_action, oracle_out;
  bool oracle_invert = false;
  auto* oracle = app.add_subcommand("oracle", "Digital reference edge map for a fixed neighbourhood");
  oracle->add_option("--image", oracle_image, "Input PBM (P1/P4)")->required();
  oracle->add_option("--action", oracle_action, "moore | vn")->required();
  oracle->add_option("--out", oracle_out, "Output PBM (stdout if omitted)");
  oracle->add_flag("--invert", oracle_invert, "Treat white PBM samples as set pixels");

  CommonFlags sweep_flags;
  std::size_t points = 13;
  std::size_t trials = 10000;
  auto* sweep = app.add_subcommand("sweep-vlearn", "Empirical vs analytic switching probability over the learning window");
  add_common(sweep, sweep_flags);
  sweep->add_option("--points", points, "Number of amplitudes")->check(CLI::Range(2, 100000));
  sweep->add_option("--trials", trials, "Pulses per amplitude")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidationError;
  }

  try {
    if (*fig3) return reproduce_fig3(variant, fig3_flags);
    if (*run) return run_general(run_image, run_flags);
    if (*oracle) return run_oracle(oracle_image, oracle_action, oracle_out, oracle_invert);
    if (*sweep) return run_sweep(sweep_flags, points, trials);
  } catch (const mlca::IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  } catch (const mlca::ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidationError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kIoError;
  }
  return kValidationError;
}
