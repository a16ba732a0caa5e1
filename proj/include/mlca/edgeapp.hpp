#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "mlca/grid.hpp"
#include "mlca/lattice.hpp"
#include "mlca/random.hpp"

namespace mlca {

// Digital edge rule: a set pixel is an edge iff some pixel in its selected
// neighbourhood (out-of-grid counts as 0) is clear. Clear pixels never are.
BinaryImage oracle_edges(const BinaryImage& image, const Lattice<Action>& actions);
BinaryImage oracle_edges(const BinaryImage& image, Action uniform_action);

struct MapComparison {
  std::size_t mismatches = 0;
  std::vector<std::pair<std::size_t, std::size_t>> positions;  // (row, col)
};

MapComparison compare_maps(const BinaryImage& a, const BinaryImage& b);

// Half-open step range [begin, end) into a trace sequence.
struct StepWindow {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t length() const noexcept { return end - begin; }
};

struct RunStatistics {
  StepWindow window;
  Lattice<double> moore_frequency;
  Lattice<double> edge_frequency;
  Lattice<std::vector<double>> v_learn_paths;
};

RunStatistics summarize_run(const std::vector<StepTrace>& traces, StepWindow window);
RunStatistics summarize_run(const std::vector<StepTrace>& traces);

// A cell has converged when its final learning voltage sits on a clamp and
// the matching action was taken at least min_frequency of the window.
Lattice<std::uint8_t> converged_cells(const RunStatistics& stats, const LearningParams& params,
                                      double min_frequency = 0.99);

// Density-p noise image with a few solid rectangles and crosses stamped on,
// so both neighbourhood types see interior and boundary pixels.
BinaryImage make_test_image(std::size_t height, std::size_t width, double density, NoiseStream& noise);

}  // namespace mlca
