#include "mlca/edgeapp.hpp"

#include <algorithm>
#include <random>

namespace mlca {

namespace {

bool pixel_or_ground(const BinaryImage& image, std::ptrdiff_t row, std::ptrdiff_t col) {
  if (!image.contains(row, col)) return false;
  return image(static_cast<std::size_t>(row), static_cast<std::size_t>(col)) != 0;
}

}  // namespace

BinaryImage oracle_edges(const BinaryImage& image, const Lattice<Action>& actions) {
  if (!image.same_shape(actions)) throw ValidationError("image and action map shapes differ");
  BinaryImage edges(image.height(), image.width(), 0);
  for (std::size_t i = 0; i < image.height(); ++i) {
    for (std::size_t j = 0; j < image.width(); ++j) {
      if (!image(i, j)) continue;
      const auto r = static_cast<std::ptrdiff_t>(i);
      const auto c = static_cast<std::ptrdiff_t>(j);
      const bool moore = actions(i, j) == Action::Moore;
      bool all_set = true;
      for (std::ptrdiff_t dr = -1; dr <= 1 && all_set; ++dr) {
        for (std::ptrdiff_t dc = -1; dc <= 1; ++dc) {
          if (dr == 0 && dc == 0) continue;
          if (!moore && dr != 0 && dc != 0) continue;
          if (!pixel_or_ground(image, r + dr, c + dc)) {
            all_set = false;
            break;
          }
        }
      }
      edges(i, j) = all_set ? 0 : 1;
    }
  }
  return edges;
}

BinaryImage oracle_edges(const BinaryImage& image, Action uniform_action) {
  return oracle_edges(image, Lattice<Action>(image.height(), image.width(), uniform_action));
}

MapComparison compare_maps(const BinaryImage& a, const BinaryImage& b) {
  if (!a.same_shape(b)) throw ValidationError("edge map shapes differ");
  MapComparison out;
  for (std::size_t i = 0; i < a.height(); ++i) {
    for (std::size_t j = 0; j < a.width(); ++j) {
      if (a(i, j) != b(i, j)) out.positions.emplace_back(i, j);
    }
  }
  out.mismatches = out.positions.size();
  return out;
}

RunStatistics summarize_run(const std::vector<StepTrace>& traces, StepWindow window) {
  if (window.end <= window.begin) throw ValidationError("empty statistics window");
  if (window.end > traces.size()) throw ValidationError("statistics window exceeds trace length");

  const std::size_t h = traces.front().edge_map.height();
  const std::size_t w = traces.front().edge_map.width();
  RunStatistics stats;
  stats.window = window;
  stats.moore_frequency = Lattice<double>(h, w, 0.0);
  stats.edge_frequency = Lattice<double>(h, w, 0.0);
  stats.v_learn_paths = Lattice<std::vector<double>>(h, w);

  Lattice<std::size_t> moore_count(h, w, 0);
  Lattice<std::size_t> edge_count(h, w, 0);
  for (std::size_t s = window.begin; s < window.end; ++s) {
    const StepTrace& t = traces[s];
    if (t.edge_map.height() != h || t.edge_map.width() != w) throw ValidationError("trace shapes differ");
    for (std::size_t k = 0; k < h * w; ++k) {
      moore_count[k] += t.actions[k] == Action::Moore ? 1 : 0;
      edge_count[k] += t.edge_map[k];
      stats.v_learn_paths[k].push_back(t.v_learn[k]);
    }
  }
  const auto n = static_cast<double>(window.length());
  for (std::size_t k = 0; k < h * w; ++k) {
    stats.moore_frequency[k] = static_cast<double>(moore_count[k]) / n;
    stats.edge_frequency[k] = static_cast<double>(edge_count[k]) / n;
  }
  return stats;
}

RunStatistics summarize_run(const std::vector<StepTrace>& traces) {
  return summarize_run(traces, StepWindow{0, traces.size()});
}

Lattice<std::uint8_t> converged_cells(const RunStatistics& stats, const LearningParams& params,
                                      double min_frequency) {
  Lattice<std::uint8_t> out(stats.moore_frequency.height(), stats.moore_frequency.width(), 0);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double v = stats.v_learn_paths[k].back();
    const double moore = stats.moore_frequency[k];
    const bool high = v >= params.v_max_volts && moore >= min_frequency;
    const bool low = v <= params.v_min_volts && 1.0 - moore >= min_frequency;
    out[k] = high || low ? 1 : 0;
  }
  return out;
}

BinaryImage make_test_image(std::size_t height, std::size_t width, double density, NoiseStream& noise) {
  BinaryImage img(height, width, 0);
  std::bernoulli_distribution coin(density);
  for (auto& px : img) px = coin(noise) ? 1 : 0;

  std::uniform_int_distribution<std::size_t> pick_row(0, height - 1);
  std::uniform_int_distribution<std::size_t> pick_col(0, width - 1);
  std::uniform_int_distribution<int> pick_shapes(1, 3);
  const int shapes = pick_shapes(noise);
  for (int s = 0; s < shapes; ++s) {
    const std::size_t r0 = pick_row(noise);
    const std::size_t c0 = pick_col(noise);
    const std::size_t r1 = std::min(height - 1, r0 + pick_row(noise) / 2);
    const std::size_t c1 = std::min(width - 1, c0 + pick_col(noise) / 2);
    const std::uint8_t value = coin(noise) ? 1 : 0;
    if (s % 2 == 0) {
      for (std::size_t i = r0; i <= r1; ++i)
        for (std::size_t j = c0; j <= c1; ++j) img(i, j) = value;
    } else {
      const std::size_t mid_r = (r0 + r1) / 2;
      const std::size_t mid_c = (c0 + c1) / 2;
      for (std::size_t j = c0; j <= c1; ++j) img(mid_r, j) = value;
      for (std::size_t i = r0; i <= r1; ++i) img(i, mid_c) = value;
    }
  }
  return img;
}

}  // namespace mlca
