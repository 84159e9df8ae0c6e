// Python bindings. Plans, models and reports cross the boundary as JSON text;
// the package __init__ turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dlpp/datagen.hpp"
#include "dlpp/errors.hpp"
#include "dlpp/experiments.hpp"
#include "dlpp/formulations.hpp"
#include "dlpp/greedy.hpp"
#include "dlpp/instance_io.hpp"
#include "dlpp/metrics.hpp"
#include "dlpp/oracles.hpp"
#include "dlpp/proxy.hpp"
#include "dlpp/synthetic.hpp"

namespace py = pybind11;
using namespace dlpp;

namespace {

MipOptions limits(double time_limit, std::size_t node_limit) {
  MipOptions o;
  o.time_limit = time_limit;
  o.node_limit = node_limit;
  return o;
}

std::string solve_json(const Instance& inst, const std::string& mode, double time_limit, std::size_t node_limit,
                       const std::string& model_json) {
  const MipOptions mip = limits(time_limit, node_limit);
  LoadPlan plan;
  {
    py::gil_scoped_release release;
    if (mode == "mip") {
      PlanSolve r = solve_model1(inst, mip);
      if (!r.plan) throw NoIncumbent("model1", to_string(r.mip.status));
      plan = std::move(*r.plan);
    } else if (mode == "gdo") {
      plan = solve_gdo(inst, {mip, mip}).plan;
    } else if (mode == "greedy") {
      plan = greedy_solve(inst).plan;
    } else if (mode == "proxy") {
      if (model_json.empty()) throw std::invalid_argument("proxy mode needs a model");
      plan = proxy_solve(model_from_json(model_json), inst, mip).plan;
    } else {
      throw std::invalid_argument("mode must be mip, gdo, greedy or proxy");
    }
  }
  return plan_to_json(inst, plan);
}

}  // namespace

PYBIND11_MODULE(_dlpp, m) {
  m.doc() = "Dynamic load planning: cost MIP, goal-directed optimization, proxy and greedy";

  static py::exception<Error> error(m, "DlppError");
  static py::exception<ValidationError> validation(m, "ValidationError", error.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      PyErr_SetString(validation.ptr(), e.what());
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), e.what());
    }
  });

  py::class_<Instance>(m, "Instance")
      .def_static("from_json", &load_instance_string, py::arg("text"))
      .def_static("from_file", [](const std::string& path) { return load_instance_file(path); }, py::arg("path"))
      .def("to_json", &save_instance)
      .def_property_readonly("num_sort_pairs", [](const Instance& i) { return i.sort_pairs.size(); })
      .def_property_readonly("num_trailer_types", [](const Instance& i) { return i.trailer_types.size(); })
      .def_property_readonly("num_commodities", [](const Instance& i) { return i.commodities.size(); })
      .def_property_readonly("has_reference_plan", [](const Instance& i) { return i.reference_plan.has_value(); })
      .def_property_readonly("total_volume", &Instance::total_volume)
      .def("volumes", &Instance::volumes)
      .def("with_volumes", [](const Instance& i, const std::vector<double>& v) { return i.with_volumes(v); })
      .def("reference_counts", &reference_counts)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; });

  m.def("fixture_t1", &fixture_t1);
  m.def("fixture_splitting", &fixture_splitting);
  m.def("synthetic_terminal", [](std::uint64_t seed) { return synthetic_terminal(seed); }, py::arg("seed"));
  m.def("restrict_scenario",
        [](const Instance& inst, const std::string& scenario) { return restrict_scenario(inst, parse_scenario(scenario)); },
        py::arg("instance"), py::arg("scenario"));
  m.def("perturb", &perturb, py::arg("instance"), py::arg("seed"));

  m.def("_solve", &solve_json, py::arg("instance"), py::arg("mode"), py::arg("time_limit"), py::arg("node_limit"),
        py::arg("model_json"));
  m.def("plan_cost", &plan_cost, py::arg("instance"), py::arg("y"));
  m.def(
      "brute_force_cost",
      [](const Instance& inst) {
        py::gil_scoped_release release;
        return brute_force_dlpp(inst).cost;
      },
      py::arg("instance"));

  m.def("shifted_geomean", &shifted_geomean, py::arg("values"), py::arg("shift"));
  m.def("normalized_distance",
        py::overload_cast<const std::vector<double>&, const std::vector<double>&>(&normalized_distance),
        py::arg("y"), py::arg("gamma"));
  m.def(
      "total_variation",
      [](const std::vector<std::vector<double>>& plans) { return total_variation(plans).value; },
      py::arg("plans"));

  m.def(
      "_generate_dataset",
      [](const Instance& ref, std::size_t n, std::uint64_t seed, const std::string& dir, std::size_t jobs) {
        py::gil_scoped_release release;
        DatagenOptions o;
        o.jobs = jobs;
        const Dataset d = generate_dataset(ref, n, seed, o);
        save_dataset(d, dir);
        return d.failures();
      },
      py::arg("reference"), py::arg("n"), py::arg("seed"), py::arg("out_dir"), py::arg("jobs"));
  m.def(
      "_train",
      [](const std::string& dir, std::uint64_t seed, std::size_t epochs, double lr, std::size_t layers,
         std::size_t hidden) {
        py::gil_scoped_release release;
        const Dataset d = load_dataset(dir);
        TrainingConfig cfg;
        cfg.seed = seed;
        cfg.epochs = epochs;
        cfg.learning_rate = lr;
        cfg.arch.num_layers = layers;
        cfg.arch.hidden = hidden;
        const TrainResult r = train(d.structure, samples_of(d, Split::Train), samples_of(d, Split::Validation), cfg);
        return model_to_json(r.model);
      },
      py::arg("data_dir"), py::arg("seed"), py::arg("epochs"), py::arg("learning_rate"), py::arg("layers"),
      py::arg("hidden"));
  m.def(
      "_evaluate",
      [](const std::string& dir, const std::vector<std::string>& methods, const std::string& model_json) {
        py::gil_scoped_release release;
        const Dataset d = load_dataset(dir);
        std::optional<ProxyModel> model;
        if (!model_json.empty()) model = model_from_json(model_json);
        const SplitEvaluation ev = evaluate_split(d, Split::Test, methods, model ? &*model : nullptr);
        return report_summary_json(ev.report);
      },
      py::arg("data_dir"), py::arg("methods"), py::arg("model_json"));
}
