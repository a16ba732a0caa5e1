#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "mlca/config.hpp"
#include "mlca/edgeapp.hpp"

namespace mlca {

// One row per (step, cell): step,row,col,action,edge,v_learn,reinforcement.
// Voltages use the shortest round-trip decimal form, so identical runs give
// identical bytes.
void write_trace_csv(std::ostream& out, const std::vector<StepTrace>& traces);

// Scalars reported alongside the per-cell statistics in summary.json.
using SummaryFields = std::vector<std::pair<std::string, double>>;

std::string summary_json(const RunStatistics& stats, const RunConfig& config, const std::string& label,
                         const SummaryFields& extra = {});

struct WrittenFiles {
  std::vector<std::filesystem::path> edge_frames;
  std::filesystem::path trace_csv;
  std::filesystem::path summary;
  std::filesystem::path config_used;
};

// Writes edge_%05d.pbm per step, trace.csv, summary.json and config_used.json
// into dir (created if missing). Nothing is written for an empty trace list.
WrittenFiles save_outputs(const std::vector<StepTrace>& traces, const RunStatistics& stats,
                          const RunConfig& config, const std::filesystem::path& dir,
                          const std::string& label = "run", const SummaryFields& extra = {});

std::string format_double(double v);

}  // namespace mlca
