#include "mlca/outputs.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"
#include "mlca/pbm.hpp"

namespace mlca {

std::string format_double(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), ptr);
}

void write_trace_csv(std::ostream& out, const std::vector<StepTrace>& traces) {
  out << "step,row,col,action,edge,v_learn,reinforcement\n";
  for (const auto& t : traces) {
    const std::size_t w = t.edge_map.width();
    for (std::size_t k = 0; k < t.edge_map.size(); ++k) {
      out << t.step_index << ',' << k / w << ',' << k % w << ',' << to_string(t.actions[k]) << ','
          << int{t.edge_map[k]} << ',' << format_double(t.v_learn[k]) << ',' << to_string(t.reinforcement[k])
          << '\n';
    }
  }
}

namespace {

template <typename T, typename Fn>
nlohmann::json rows(const Lattice<T>& lat, Fn&& fn) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < lat.height(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < lat.width(); ++j) row.push_back(fn(lat(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

std::string summary_json(const RunStatistics& stats, const RunConfig& config, const std::string& label,
                         const SummaryFields& extra) {
  const auto same = [](double v) { return v; };
  nlohmann::json j = {
      {"label", label},
      {"seed", config.grid.seed},
      {"height", stats.moore_frequency.height()},
      {"width", stats.moore_frequency.width()},
      {"window", {{"begin", stats.window.begin}, {"end", stats.window.end}}},
      {"moore_frequency", rows(stats.moore_frequency, same)},
      {"edge_frequency", rows(stats.edge_frequency, same)},
      {"final_v_learn", rows(stats.v_learn_paths, [](const std::vector<double>& p) { return p.back(); })},
  };
  for (const auto& [key, value] : extra) j[key] = value;
  return j.dump(2) + "\n";
}

WrittenFiles save_outputs(const std::vector<StepTrace>& traces, const RunStatistics& stats,
                          const RunConfig& config, const std::filesystem::path& dir, const std::string& label,
                          const SummaryFields& extra) {
  if (traces.empty()) throw ValidationError("no traces to save");

  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  WrittenFiles files;
  for (const auto& t : traces) {
    std::array<char, 32> name{};
    std::snprintf(name.data(), name.size(), "edge_%05zu.pbm", t.step_index);
    files.edge_frames.push_back(dir / name.data());
    save_image(files.edge_frames.back(), t.edge_map);
  }

  const auto write_text = [](const std::filesystem::path& path, auto&& writer) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    writer(out);
    if (!out) throw IoError("failed writing " + path.string());
  };

  files.trace_csv = dir / "trace.csv";
  write_text(files.trace_csv, [&](std::ostream& out) { write_trace_csv(out, traces); });
  files.summary = dir / "summary.json";
  write_text(files.summary, [&](std::ostream& out) { out << summary_json(stats, config, label, extra); });
  files.config_used = dir / "config_used.json";
  write_text(files.config_used, [&](std::ostream& out) { out << config_to_json(config); });
  return files;
}

}  // namespace mlca
