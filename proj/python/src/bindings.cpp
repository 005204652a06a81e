// Copyright 2026 The reupload Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the core library.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "reupload/baselines.hpp"
#include "reupload/bench.hpp"
#include "reupload/classifier.hpp"
#include "reupload/emulator.hpp"
#include "reupload/serialize.hpp"
#include "reupload/training.hpp"

namespace py = pybind11;
using namespace reupload;

namespace {

Dataset to_dataset(Problem problem, const py::array_t<double, py::array::c_style | py::array::forcecast>& x,
                   const py::array_t<std::int64_t, py::array::c_style | py::array::forcecast>& y) {
  if (x.ndim() != 2 || y.ndim() != 1 || x.shape(0) != y.shape(0))
    throw InvalidArgument("expected X of shape (n, d) and y of shape (n,)");
  if (static_cast<std::size_t>(x.shape(1)) != problem_dim(problem))
    throw InvalidArgument("X has the wrong number of features for this problem");
  Dataset d{problem, {}, 0};
  const auto xs = x.unchecked<2>();
  const auto ys = y.unchecked<1>();
  for (py::ssize_t i = 0; i < x.shape(0); ++i) {
    Sample s;
    for (py::ssize_t j = 0; j < x.shape(1); ++j) s.x.push_back(xs(i, j));
    if (ys(i) < 0 || static_cast<std::size_t>(ys(i)) >= problem_classes(problem))
      throw InvalidArgument("label out of range");
    s.c = static_cast<std::size_t>(ys(i));
    d.samples.push_back(std::move(s));
  }
  return d;
}

py::tuple from_dataset(const Dataset& d) {
  const std::size_t n = d.size(), dim = problem_dim(d.problem);
  py::array_t<double> x({n, dim});
  py::array_t<std::int64_t> y(static_cast<py::ssize_t>(n));
  auto xm = x.mutable_unchecked<2>();
  auto ym = y.mutable_unchecked<1>();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < dim; ++j) xm(i, j) = d.samples[i].x[j];
    ym(i) = static_cast<std::int64_t>(d.samples[i].c);
  }
  return py::make_tuple(x, y);
}

EmulatorExecutor make_emulator(const std::string& profile) {
  auto [hw, noise] = calibrated_default();
  std::istringstream in(profile);
  load_profiles(in, hw, noise);
  return EmulatorExecutor(hw, noise);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-qubit data re-uploading classifier";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<TrainingError>(m, "TrainingError", PyExc_RuntimeError);

  m.def("problems", [] {
    std::vector<std::string> names;
    for (Problem p : kAllProblems) names.emplace_back(to_string(p));
    return names;
  });
  m.def("problem_shape", [](const std::string& name) {
    const Problem p = parse_problem(name);
    return py::make_tuple(problem_dim(p), problem_classes(p));
  }, py::arg("problem"), "(dimension, classes) of a problem");
  m.def("sample_dataset", [](const std::string& name, std::size_t n, std::uint64_t seed) {
    return from_dataset(sample_dataset(parse_problem(name), n, seed));
  }, py::arg("problem"), py::arg("n"), py::arg("seed"), "(X, y) uniform on [-1, 1]^d");
  m.def("label_point", [](const std::string& name, const std::vector<double>& x) {
    return label_point(parse_problem(name), x);
  }, py::arg("problem"), py::arg("x"));
  m.def("class_balance", [](const std::string& name) { return class_balance(parse_problem(name)); },
        py::arg("problem"));

  py::class_<ParameterSet>(m, "ParameterSet")
      .def(py::init([](const std::string& ansatz, std::size_t dim, std::size_t layers, std::vector<double> flat) {
             return ParameterSet(parse_ansatz(ansatz), dim, layers, std::move(flat));
           }),
           py::arg("ansatz"), py::arg("dim"), py::arg("layers"), py::arg("flat"))
      .def_static("zeros", [](const std::string& ansatz, std::size_t dim, std::size_t layers) {
        return ParameterSet::zeros(parse_ansatz(ansatz), dim, layers);
      }, py::arg("ansatz"), py::arg("dim"), py::arg("layers"))
      .def_property_readonly("ansatz", [](const ParameterSet& t) { return std::string(to_string(t.ansatz())); })
      .def_property_readonly("dim", &ParameterSet::dim)
      .def_property_readonly("layers", &ParameterSet::layers)
      .def_property_readonly("flat", [](const ParameterSet& t) {
        return std::vector<double>(t.flat().begin(), t.flat().end());
      })
      .def("to_json", &parameter_set_to_json)
      .def_static("from_json", &parameter_set_from_json)
      .def("__eq__", [](const ParameterSet& a, const ParameterSet& b) { return a == b; })
      .def("__len__", &ParameterSet::size);

  py::class_<Executor>(m, "Executor");
  py::class_<ExactExecutor, Executor>(m, "ExactExecutor").def(py::init<>());
  py::class_<EmulatorExecutor, Executor>(m, "EmulatorExecutor")
      .def(py::init(&make_emulator), py::arg("profile") = "",
           "calibrated default profile with key=value lines layered on top")
      .def("profile", [](const EmulatorExecutor& e) {
        std::ostringstream out;
        save_profiles(out, e.hardware(), e.noise());
        return out.str();
      });

  m.def("train", [](const std::string& name, py::array_t<double> x, py::array_t<std::int64_t> y, std::size_t layers,
                    const std::string& ansatz, std::uint64_t seed, const std::string& method,
                    std::size_t max_evaluations, std::size_t restarts) {
    const Problem p = parse_problem(name);
    OptimizerConfig cfg;
    cfg.method = parse_optimizer_method(method);
    cfg.max_evaluations = max_evaluations;
    cfg.restarts = restarts;
    const TrainReport r = train_simulated(p, layers, parse_ansatz(ansatz), to_dataset(p, x, y), cfg, seed);
    py::dict out;
    out["theta"] = r.theta_sim;
    out["final_loss"] = r.final_loss;
    out["train_accuracy"] = r.train_accuracy;
    std::vector<std::pair<std::size_t, double>> history;
    for (const LossPoint& lp : r.loss_history) history.emplace_back(lp.evaluation, lp.loss);
    out["loss_history"] = history;
    return out;
  }, py::arg("problem"), py::arg("X"), py::arg("y"), py::arg("layers") = 4, py::arg("ansatz") = "A",
     py::arg("seed") = 1, py::arg("method") = "evolutionary", py::arg("max_evaluations") = 10000,
     py::arg("restarts") = 5, "minimize chi^2 with the exact simulator");

  m.def("accuracy", [](const ParameterSet& theta, const std::string& name, py::array_t<double> x,
                       py::array_t<std::int64_t> y, const Executor* executor, int shots, std::uint64_t seed) {
    const Problem p = parse_problem(name);
    const ExactExecutor exact;
    return evaluate(theta, to_dataset(p, x, y), label_states(problem_classes(p)), executor ? *executor : exact, shots,
                    seed).accuracy;
  }, py::arg("theta"), py::arg("problem"), py::arg("X"), py::arg("y"), py::arg("executor") = nullptr,
     py::arg("shots") = 100, py::arg("seed") = 0);

  m.def("predict", [](const ParameterSet& theta, const std::vector<double>& x, std::size_t classes) {
    const Prediction pr = predict(theta, x, label_states(classes), ExactExecutor{});
    return py::make_tuple(pr.guess, pr.probabilities);
  }, py::arg("theta"), py::arg("x"), py::arg("classes"), "(guess, class probabilities) under exact simulation");

  m.def("fuse", [](const ParameterSet& theta, const std::vector<double>& x, std::size_t c, std::size_t classes) {
    std::vector<std::pair<double, double>> out;
    for (const RotationParams& r : fuse(theta, x, c, label_states(classes)).pulses) out.emplace_back(r.gamma, r.delta);
    return out;
  }, py::arg("theta"), py::arg("x"), py::arg("label"), py::arg("classes"), "(gamma, delta) per pulse");

  m.def("execute", [](const std::vector<std::pair<double, double>>& pulses, const EmulatorExecutor& emulator,
                      std::uint64_t seed) {
    std::vector<RotationParams> seq;
    for (const auto& [g, d] : pulses) seq.push_back({g, d});
    const ShotOutcome o = noisy_execute(seq, emulator.hardware(), emulator.noise(), seed);
    py::dict out;
    out["p0_estimate"] = o.p0_estimate;
    out["shots_used"] = o.shots_used;
    out["collisions"] = o.collisions;
    return out;
  }, py::arg("pulses"), py::arg("emulator"), py::arg("seed") = 0);

  m.def("match_width", &match_width, py::arg("quantum_params"), py::arg("dim"), py::arg("classes"));

  m.def("run_experiment", [](const std::string& config_text) {
    return bench_report_to_json(BenchReport{{run_experiment(ExperimentConfig::parse_text(config_text))}});
  }, py::arg("config"), "key=value experiment config in, JSON report out");
}
