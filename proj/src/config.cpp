#include "mlca/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mlca {

using nlohmann::json;

namespace {

// Reads obj[key] into out when present and records the key as consumed.
class Reader {
public:
  Reader(const json& obj, std::string section) : obj_(obj), section_(std::move(section)) {
    if (!obj_.is_object()) throw ValidationError("config: '" + section_ + "' must be an object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    auto it = obj_.find(key);
    if (it == obj_.end()) return;
    try {
      out = it->template get<T>();
    } catch (const json::exception& e) {
      throw ValidationError("config: bad value for " + section_ + "." + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  void finish() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it) {
      if (!seen_.count(it.key())) throw ValidationError("config: unknown key " + section_ + "." + it.key());
    }
  }

private:
  const json& obj_;
  std::string section_;
  std::set<std::string> seen_;
};

void read_device(const json& j, const std::string& name, DeviceParams& d) {
  Reader r(j, name);
  r.get("r_on_ohms", d.r_on_ohms);
  r.get("r_off_ohms", d.r_off_ohms);
  r.get("set_threshold_mean_volts", d.set_threshold_mean_volts);
  r.get("set_threshold_sigma_volts", d.set_threshold_sigma_volts);
  r.get("reset_threshold_mean_volts", d.reset_threshold_mean_volts);
  r.get("reset_threshold_sigma_volts", d.reset_threshold_sigma_volts);
  r.finish();
}

json write_device(const DeviceParams& d) {
  return {{"r_on_ohms", d.r_on_ohms},
          {"r_off_ohms", d.r_off_ohms},
          {"set_threshold_mean_volts", d.set_threshold_mean_volts},
          {"set_threshold_sigma_volts", d.set_threshold_sigma_volts},
          {"reset_threshold_mean_volts", d.reset_threshold_mean_volts},
          {"reset_threshold_sigma_volts", d.reset_threshold_sigma_volts}};
}

template <typename Enum, typename Parse>
void read_enum(Reader& r, const char* key, Enum& out, Parse parse) {
  std::string text;
  r.get(key, text);
  if (!text.empty()) out = parse(text);
}

}  // namespace

void RunConfig::validate() const {
  grid.validate();
  if (width == 0 || height == 0) throw ValidationError("grid width and height must be at least 1");
  if (n_steps == 0) throw ValidationError("n_steps must be at least 1");
  if (reinforcement_mode == ReinforcementMode::Forced) {
    if (forced_schedule.empty()) throw ValidationError("forced reinforcement needs a schedule");
    if (forced_schedule.size() > 1 && forced_schedule.size() < n_steps) {
      throw ValidationError("forced schedule has " + std::to_string(forced_schedule.size()) + " entries for " +
                            std::to_string(n_steps) + " steps");
    }
  }
}

ReinforcementSchedule RunConfig::schedule() const {
  if (reinforcement_mode == ReinforcementMode::Computed) return ReinforcementSchedule::computed();
  if (forced_schedule.size() == 1) return ReinforcementSchedule::constant(forced_schedule.front());
  return ReinforcementSchedule::per_step({forced_schedule.begin(), forced_schedule.end()});
}

RunConfig config_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  Reader top(root, "config");
  if (auto* j = top.child("m1")) read_device(*j, "m1", cfg.grid.m1);
  if (auto* j = top.child("m2")) read_device(*j, "m2", cfg.grid.m2);

  // Learning defaults follow M1 unless overridden.
  cfg.grid.learning = LearningParams::defaults_for(cfg.grid.m1);
  if (auto* j = top.child("learning")) {
    Reader r(*j, "learning");
    r.get("v_neutral_volts", cfg.grid.learning.v_neutral_volts);
    r.get("delta_v_volts", cfg.grid.learning.delta_v_volts);
    r.get("v_min_volts", cfg.grid.learning.v_min_volts);
    r.get("v_max_volts", cfg.grid.learning.v_max_volts);
    read_enum(r, "mixed_policy", cfg.grid.learning.mixed_policy, mixed_policy_from_string);
    r.finish();
  }
  if (auto* j = top.child("millman")) {
    Reader r(*j, "millman");
    r.get("branch_resistance_ohms", cfg.grid.millman.branch_resistance_ohms);
    r.get("v_high_volts", cfg.grid.millman.v_high_volts);
    r.get("edge_threshold_volts", cfg.grid.millman.edge_threshold_volts);
    r.finish();
  }
  if (auto* j = top.child("timing")) {
    Reader r(*j, "timing");
    r.get("step_duration_seconds", cfg.grid.timing.step_duration_seconds);
    r.get("read_fraction", cfg.grid.timing.read_fraction);
    r.get("read_voltage_volts", cfg.grid.timing.read_voltage_volts);
    r.finish();
  }
  if (auto* j = top.child("grid")) {
    Reader r(*j, "grid");
    r.get("width", cfg.width);
    r.get("height", cfg.height);
    read_enum(r, "feedback_mode", cfg.grid.feedback_mode, feedback_mode_from_string);
    r.finish();
  }
  if (auto* j = top.child("reinforcement")) {
    Reader r(*j, "reinforcement");
    std::string mode;
    r.get("mode", mode);
    if (mode == "forced") {
      cfg.reinforcement_mode = ReinforcementMode::Forced;
    } else if (mode.empty() || mode == "computed") {
      cfg.reinforcement_mode = ReinforcementMode::Computed;
    } else {
      throw ValidationError("config: unknown reinforcement mode '" + mode + "'");
    }
    std::vector<std::string> names;
    r.get("schedule", names);
    for (const auto& n : names) cfg.forced_schedule.push_back(reinforcement_from_string(n));
    r.finish();
  }
  top.get("n_steps", cfg.n_steps);
  top.get("seed", cfg.grid.seed);
  top.get("output_dir", cfg.output_dir);
  top.get("invert_pbm", cfg.invert_pbm);
  top.get("parallel", cfg.parallel);
  top.finish();

  cfg.validate();
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json schedule = json::array();
  for (auto s : cfg.forced_schedule) schedule.push_back(to_string(s));
  const auto& g = cfg.grid;
  json root = {
      {"m1", write_device(g.m1)},
      {"m2", write_device(g.m2)},
      {"learning",
       {{"v_neutral_volts", g.learning.v_neutral_volts},
        {"delta_v_volts", g.learning.delta_v_volts},
        {"v_min_volts", g.learning.v_min_volts},
        {"v_max_volts", g.learning.v_max_volts},
        {"mixed_policy", to_string(g.learning.mixed_policy)}}},
      {"millman",
       {{"branch_resistance_ohms", g.millman.branch_resistance_ohms},
        {"v_high_volts", g.millman.v_high_volts},
        {"edge_threshold_volts", g.millman.edge_threshold_volts}}},
      {"timing",
       {{"step_duration_seconds", g.timing.step_duration_seconds},
        {"read_fraction", g.timing.read_fraction},
        {"read_voltage_volts", g.timing.read_voltage_volts}}},
      {"grid", {{"width", cfg.width}, {"height", cfg.height}, {"feedback_mode", to_string(g.feedback_mode)}}},
      {"reinforcement",
       {{"mode", cfg.reinforcement_mode == ReinforcementMode::Forced ? "forced" : "computed"},
        {"schedule", schedule}}},
      {"n_steps", cfg.n_steps},
      {"seed", g.seed},
      {"output_dir", cfg.output_dir},
      {"invert_pbm", cfg.invert_pbm},
      {"parallel", cfg.parallel},
  };
  return root.dump(2) + "\n";
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json(buf.str());
}

void save_config(const std::filesystem::path& path, const RunConfig& config) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write config " + path.string());
  out << config_to_json(config);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace mlca
