#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mlca/config.hpp"
#include "mlca/edgeapp.hpp"
#include "mlca/experiments.hpp"
#include "mlca/pbm.hpp"

namespace py = pybind11;
using namespace mlca;

namespace {

template <typename T>
py::array_t<T> to_numpy(const Lattice<T>& lat) {
  py::array_t<T> out({lat.height(), lat.width()});
  auto view = out.template mutable_unchecked<2>();
  for (std::size_t i = 0; i < lat.height(); ++i)
    for (std::size_t j = 0; j < lat.width(); ++j) view(i, j) = lat(i, j);
  return out;
}

py::array_t<std::uint8_t> actions_to_numpy(const Lattice<Action>& lat) {
  Lattice<std::uint8_t> bits(lat.height(), lat.width(), 0);
  for (std::size_t k = 0; k < lat.size(); ++k) bits[k] = lat[k] == Action::Moore ? 1 : 0;
  return to_numpy(bits);
}

BinaryImage image_from_numpy(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 2) throw ValidationError("image must be a 2-D array");
  auto view = arr.unchecked<2>();
  BinaryImage img(static_cast<std::size_t>(arr.shape(0)), static_cast<std::size_t>(arr.shape(1)), 0);
  for (std::size_t i = 0; i < img.height(); ++i) {
    for (std::size_t j = 0; j < img.width(); ++j) {
      const auto v = view(static_cast<py::ssize_t>(i), static_cast<py::ssize_t>(j));
      if (v > 1) throw ValidationError("image values must be 0 or 1");
      img(i, j) = v;
    }
  }
  return img;
}

// 1 = Moore, 0 = von Neumann.
Lattice<Action> actions_from_numpy(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& arr) {
  const auto bits = image_from_numpy(arr);
  Lattice<Action> out(bits.height(), bits.width(), Action::VonNeumann);
  for (std::size_t k = 0; k < bits.size(); ++k) out[k] = bits[k] ? Action::Moore : Action::VonNeumann;
  return out;
}

std::optional<Reinforcement> parse_override(const std::optional<std::string>& s) {
  if (!s) return std::nullopt;
  return reinforcement_from_string(*s);
}

}  // namespace

PYBIND11_MODULE(_mlca, m) {
  m.doc() = "Memristive learning cellular automata: devices, cells, grid engine and edge-detection tools";
  m.attr("__version__") = "0.1.0";

  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::enum_<ResistiveState>(m, "ResistiveState").value("On", ResistiveState::On).value("Off", ResistiveState::Off);
  py::enum_<Action>(m, "Action").value("VonNeumann", Action::VonNeumann).value("Moore", Action::Moore);
  py::enum_<Reinforcement>(m, "Reinforcement")
      .value("RewardMoore", Reinforcement::RewardMoore)
      .value("RewardVonNeumann", Reinforcement::RewardVonNeumann)
      .value("Neutral", Reinforcement::Neutral);
  py::enum_<MixedPolicy>(m, "MixedPolicy")
      .value("Hold", MixedPolicy::Hold)
      .value("DecayToNeutral", MixedPolicy::DecayToNeutral);
  py::enum_<FeedbackMode>(m, "FeedbackMode")
      .value("InitialImage", FeedbackMode::InitialImage)
      .value("PreviousOutput", FeedbackMode::PreviousOutput);

  py::class_<NoiseStream>(m, "NoiseStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), py::arg("seed"), py::arg("cell"), py::arg("step"))
      .def("next", [](NoiseStream& s) { return s(); })
      .def_property_readonly("draws", &NoiseStream::draws);

  py::class_<DeviceParams>(m, "DeviceParams")
      .def(py::init<>())
      .def_readwrite("r_on_ohms", &DeviceParams::r_on_ohms)
      .def_readwrite("r_off_ohms", &DeviceParams::r_off_ohms)
      .def_readwrite("set_threshold_mean_volts", &DeviceParams::set_threshold_mean_volts)
      .def_readwrite("set_threshold_sigma_volts", &DeviceParams::set_threshold_sigma_volts)
      .def_readwrite("reset_threshold_mean_volts", &DeviceParams::reset_threshold_mean_volts)
      .def_readwrite("reset_threshold_sigma_volts", &DeviceParams::reset_threshold_sigma_volts)
      .def("validate", &DeviceParams::validate)
      .def_property_readonly("read_margin", &DeviceParams::read_margin);

  py::class_<PulseOutcome>(m, "PulseOutcome")
      .def_readonly("new_state", &PulseOutcome::new_state)
      .def_readonly("switched", &PulseOutcome::switched)
      .def_readonly("sampled_threshold", &PulseOutcome::sampled_threshold);

  py::class_<MemristorDevice>(m, "MemristorDevice")
      .def(py::init<const DeviceParams&, ResistiveState>(), py::arg("params") = DeviceParams{},
           py::arg("state") = ResistiveState::Off)
      .def_property_readonly("state", &MemristorDevice::state)
      .def_property_readonly("params", &MemristorDevice::params)
      .def("sample_set_threshold", &MemristorDevice::sample_set_threshold, py::arg("noise"))
      .def("apply_write_pulse", &MemristorDevice::apply_write_pulse, py::arg("amplitude"), py::arg("noise"))
      .def("switching_probability", &MemristorDevice::switching_probability, py::arg("amplitude"))
      .def("read_resistance", &MemristorDevice::read_resistance, py::arg("read_voltage"));

  py::class_<LearningParams>(m, "LearningParams")
      .def(py::init<>())
      .def_static("defaults_for", &LearningParams::defaults_for, py::arg("m1"))
      .def_readwrite("v_neutral_volts", &LearningParams::v_neutral_volts)
      .def_readwrite("delta_v_volts", &LearningParams::delta_v_volts)
      .def_readwrite("v_min_volts", &LearningParams::v_min_volts)
      .def_readwrite("v_max_volts", &LearningParams::v_max_volts)
      .def_readwrite("mixed_policy", &LearningParams::mixed_policy);

  py::class_<LearningState>(m, "LearningState")
      .def(py::init<const LearningParams&>(), py::arg("params") = LearningParams{})
      .def_property_readonly("v_learn", &LearningState::v_learn)
      .def_property_readonly("params", &LearningState::params);

  m.def("update_learning_voltage", &update_learning_voltage, py::arg("state"), py::arg("signal"));
  m.def("action_probability", &action_probability, py::arg("state"), py::arg("m1"));

  py::class_<PhaseTiming>(m, "PhaseTiming")
      .def(py::init<>())
      .def_readwrite("step_duration_seconds", &PhaseTiming::step_duration_seconds)
      .def_readwrite("read_fraction", &PhaseTiming::read_fraction)
      .def_readwrite("read_voltage_volts", &PhaseTiming::read_voltage_volts);

  py::class_<MillmanConfig>(m, "MillmanConfig")
      .def(py::init<>())
      .def_readwrite("branch_resistance_ohms", &MillmanConfig::branch_resistance_ohms)
      .def_readwrite("v_high_volts", &MillmanConfig::v_high_volts)
      .def_readwrite("edge_threshold_volts", &MillmanConfig::edge_threshold_volts);

  py::class_<NeighborInputs>(m, "NeighborInputs")
      .def(py::init<>())
      .def(py::init([](std::array<double, 4> orth, std::array<double, 4> diag) {
             return NeighborInputs{orth, diag};
           }),
           py::arg("orthogonal"), py::arg("diagonal"))
      .def_readwrite("orthogonal", &NeighborInputs::orthogonal)
      .def_readwrite("diagonal", &NeighborInputs::diagonal);

  m.def("millman_voltage", &millman_voltage, py::arg("inputs"), py::arg("action"),
        py::arg("cfg") = MillmanConfig{}, py::arg("m1") = MemristorDevice{});

  py::class_<GridConfig>(m, "GridConfig")
      .def(py::init<>())
      .def_readwrite("m1", &GridConfig::m1)
      .def_readwrite("m2", &GridConfig::m2)
      .def_readwrite("learning", &GridConfig::learning)
      .def_readwrite("millman", &GridConfig::millman)
      .def_readwrite("timing", &GridConfig::timing)
      .def_readwrite("feedback_mode", &GridConfig::feedback_mode)
      .def_readwrite("seed", &GridConfig::seed);

  py::class_<StepTrace>(m, "StepTrace")
      .def_readonly("step_index", &StepTrace::step_index)
      .def_property_readonly("actions", [](const StepTrace& t) { return actions_to_numpy(t.actions); },
                             "1 = Moore, 0 = von Neumann")
      .def_property_readonly("edge_map", [](const StepTrace& t) { return to_numpy(t.edge_map); })
      .def_property_readonly("v_learn", [](const StepTrace& t) { return to_numpy(t.v_learn); })
      .def_property_readonly("reinforcement", [](const StepTrace& t) {
        py::list rows;
        for (std::size_t i = 0; i < t.reinforcement.height(); ++i) {
          py::list row;
          for (std::size_t j = 0; j < t.reinforcement.width(); ++j) row.append(to_string(t.reinforcement(i, j)));
          rows.append(row);
        }
        return rows;
      });

  py::class_<Grid>(m, "Grid")
      .def(py::init([](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& image,
                       const GridConfig& cfg) { return Grid(image_from_numpy(image), cfg); }),
           py::arg("image"), py::arg("config") = GridConfig{})
      .def_property_readonly("height", &Grid::height)
      .def_property_readonly("width", &Grid::width)
      .def_property_readonly("step_index", &Grid::step_index)
      .def("gather_inputs", &Grid::gather_inputs, py::arg("row"), py::arg("col"))
      .def(
          "step",
          [](Grid& g, std::optional<std::string> signal, bool parallel) {
            StepOptions opts;
            opts.execution = parallel ? Execution::Parallel : Execution::Sequential;
            return g.step(parse_override(signal), opts);
          },
          py::arg("override") = py::none(), py::arg("parallel") = false)
      .def(
          "run",
          [](Grid& g, std::size_t n_steps, std::optional<std::string> signal, bool parallel) {
            StepOptions opts;
            opts.execution = parallel ? Execution::Parallel : Execution::Sequential;
            const auto schedule = signal ? ReinforcementSchedule::constant(reinforcement_from_string(*signal))
                                         : ReinforcementSchedule::computed();
            py::gil_scoped_release release;
            return g.run(n_steps, schedule, opts);
          },
          py::arg("n_steps"), py::arg("override") = py::none(), py::arg("parallel") = false,
          "Run n_steps; override is a constant signal name ('neutral', 'reward_moore', "
          "'reward_von_neumann') or None for environment consensus.");

  m.def(
      "oracle_edges",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& image, py::object actions) {
        const auto img = image_from_numpy(image);
        if (py::isinstance<py::str>(actions)) {
          return to_numpy(oracle_edges(img, action_from_string(actions.cast<std::string>())));
        }
        return to_numpy(oracle_edges(img, actions_from_numpy(actions.cast<py::array_t<std::uint8_t>>())));
      },
      py::arg("image"), py::arg("actions"),
      "actions: 'moore' / 'vn' or a 0/1 array (1 = Moore) of the image shape");

  m.def(
      "compare_maps",
      [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a,
         const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& b) {
        const auto r = compare_maps(image_from_numpy(a), image_from_numpy(b));
        return py::make_tuple(r.mismatches, r.positions);
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "run_fig3",
      [](const std::string& variant, std::size_t n_steps, std::uint64_t seed) {
        const auto v = fig3_variant_from_string(variant);
        Fig3Result r;
        {
          py::gil_scoped_release release;
          r = run_fig3(v, fig3_config(v, n_steps, seed));
        }
        py::dict out;
        out["center_edge_frequency"] = r.center_edge_frequency;
        out["center_final_v_learn"] = r.center_final_v_learn;
        out["moore_frequency"] = to_numpy(r.run.stats.moore_frequency);
        out["edge_frequency"] = to_numpy(r.run.stats.edge_frequency);
        out["traces"] = r.run.traces;
        return out;
      },
      py::arg("variant"), py::arg("n_steps") = 2000, py::arg("seed") = 0);

  m.def(
      "sweep_switching",
      [](const DeviceParams& p, double low, double high, std::size_t points, std::size_t trials, std::uint64_t seed) {
        py::list rows;
        for (const auto& r : sweep_switching(p, low, high, points, trials, seed))
          rows.append(py::make_tuple(r.amplitude, r.analytic, r.empirical));
        return rows;
      },
      py::arg("device"), py::arg("low"), py::arg("high"), py::arg("points") = 13, py::arg("trials") = 10000,
      py::arg("seed") = 0);

  m.def(
      "load_image", [](const std::string& path, bool invert) { return to_numpy(load_image(path, invert)); },
      py::arg("path"), py::arg("invert") = false);
  m.def(
      "save_image",
      [](const std::string& path, const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& image,
         bool raw) { save_image(path, image_from_numpy(image), raw ? PbmEncoding::Raw : PbmEncoding::Plain); },
      py::arg("path"), py::arg("image"), py::arg("raw") = false);

  m.def(
      "config_from_json", [](const std::string& text) { return config_from_json(text).grid; }, py::arg("text"),
      "Parse a run configuration and return its GridConfig part");
  m.def(
      "config_to_json",
      [](const GridConfig& grid) {
        RunConfig cfg;
        cfg.grid = grid;
        return config_to_json(cfg);
      },
      py::arg("grid"));
}
