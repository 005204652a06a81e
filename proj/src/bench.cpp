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

#include "reupload/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reupload/classifier.hpp"
#include "reupload/keyvalue.hpp"
#include "reupload/rng.hpp"
#include "reupload/serialize.hpp"

namespace reupload {

namespace {

using Json = nlohmann::ordered_json;

// Stream tags for deriving per-purpose seeds from the experiment seed.
enum : std::uint64_t { kTrainTag = 0x7A1, kTestTag = 0x7E5, kValidationTag = 0x7A7, kTrialTag = 0x7B1,
                       kScanTag = 0x5CA, kTuneTrialTag = 0x7B2 };

std::string_view executor_name(ExecutorKind k) { return k == ExecutorKind::Exact ? "exact" : "emulator"; }

MeanStd summarize(std::vector<double> values) {
  MeanStd out;
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.std = values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  out.values = std::move(values);
  return out;
}

MeanStd repeated_accuracy(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                          const Executor& executor, int shots, int trials, std::uint64_t seed, std::uint64_t tag) {
  std::vector<double> acc;
  for (int t = 0; t < trials; ++t)
    acc.push_back(evaluate(theta, data, labels, executor, shots, mix_key({seed, tag, static_cast<std::uint64_t>(t)})).accuracy);
  return summarize(std::move(acc));
}

Json mean_std_json(const MeanStd& m) {
  Json j;
  j["mean"] = m.mean;
  j["std"] = m.std;
  j["values"] = m.values;
  return j;
}

std::string checkpoint_path(const ExperimentConfig& cfg, const std::string& what) {
  std::ostringstream name;
  name << to_string(cfg.problem) << "_L" << cfg.layers << "_s" << cfg.seed << "_" << what << ".json";
  return (std::filesystem::path(cfg.output_dir) / name.str()).string();
}

}  // namespace

void ExperimentConfig::validate() const {
  auto wrap = [](const char* field, auto&& fn) {
    try {
      fn();
    } catch (const InvalidArgument& e) {
      throw ConfigError(field, e.what());
    }
  };
  if (layers == 0) throw ConfigError("layers", "must be positive");
  if (n_train == 0) throw ConfigError("n_train", "must be positive");
  if (n_test == 0) throw ConfigError("n_test", "must be positive");
  if (ansatz == Ansatz::B && problem_dim(problem) != 2) throw ConfigError("ansatz", "ansatz B requires a 2D problem");
  if (shots < 1) throw ConfigError("shots", "must be positive");
  if (trials < 1) throw ConfigError("trials", "must be positive");
  if (tune_target == TuneTarget::Validation && n_validation == 0) throw ConfigError("fine_tune.n_validation", "must be positive");
  wrap("optimizer", [&] { optimizer.validate(); });
  if (fine_tune) wrap("fine_tune", [&] { scan.validate(); });
}

std::string ExperimentConfig::serialize() const {
  KeyValueFile kv;
  kv.set("problem", std::string(to_string(problem)));
  kv.set("ansatz", std::string(to_string(ansatz)));
  kv.set("layers", std::to_string(layers));
  kv.set("n_train", std::to_string(n_train));
  kv.set("n_test", std::to_string(n_test));
  kv.set("seed", std::to_string(seed));
  kv.set("optimizer.method", std::string(to_string(optimizer.method)));
  kv.set("optimizer.max_evaluations", std::to_string(optimizer.max_evaluations));
  kv.set("optimizer.restarts", std::to_string(optimizer.restarts));
  kv.set_double("optimizer.initial_spread", optimizer.initial_spread);
  kv.set_double("optimizer.convergence_tol", optimizer.convergence_tol);
  kv.set("optimizer.population", std::to_string(optimizer.population));
  kv.set_double("optimizer.fd_step", optimizer.fd_step);
  kv.set("executor", std::string(executor_name(executor)));
  kv.set("noise.config", noise_config);
  kv.set("shots", std::to_string(shots));
  kv.set("trials", std::to_string(trials));
  kv.set("fine_tune.enabled", fine_tune ? "on" : "off");
  kv.set_double("fine_tune.half_width", scan.half_width);
  kv.set("fine_tune.grid", std::to_string(scan.grid));
  kv.set("fine_tune.passes", std::to_string(scan.passes));
  kv.set("fine_tune.shots_per_point", std::to_string(scan.shots_per_point));
  kv.set("fine_tune.target", tune_target == TuneTarget::Test ? "test" : "validation");
  kv.set("fine_tune.n_validation", std::to_string(n_validation));
  kv.set("baselines.enabled", baselines ? "on" : "off");
  kv.set("baselines.epochs", std::to_string(nn_epochs));
  kv.set("baselines.restarts", std::to_string(nn_restarts));
  kv.set("output_dir", output_dir);
  std::ostringstream out;
  kv.write(out);
  return out.str();
}

ExperimentConfig ExperimentConfig::parse_text(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

ExperimentConfig ExperimentConfig::parse(std::istream& in) {
  const KeyValueFile kv = KeyValueFile::parse(in);
  ExperimentConfig c;
  auto size = [&](const std::string& key) {
    const std::int64_t v = kv.get_int(key);
    if (v < 0) throw ConfigError(key, "must be non-negative");
    return static_cast<std::size_t>(v);
  };
  auto guarded = [](const std::string& key, auto&& fn) {
    try {
      fn();
    } catch (const InvalidArgument& e) {
      throw ConfigError(key, e.what());
    }
  };
  for (const auto& [key, value] : kv.entries()) {
    if (key == "problem") guarded(key, [&] { c.problem = parse_problem(value); });
    else if (key == "ansatz") guarded(key, [&] { c.ansatz = parse_ansatz(value); });
    else if (key == "layers") c.layers = size(key);
    else if (key == "n_train") c.n_train = size(key);
    else if (key == "n_test") c.n_test = size(key);
    else if (key == "seed") c.seed = static_cast<std::uint64_t>(size(key));
    else if (key == "optimizer.method") guarded(key, [&] { c.optimizer.method = parse_optimizer_method(value); });
    else if (key == "optimizer.max_evaluations") c.optimizer.max_evaluations = size(key);
    else if (key == "optimizer.restarts") c.optimizer.restarts = size(key);
    else if (key == "optimizer.initial_spread") c.optimizer.initial_spread = kv.get_double(key);
    else if (key == "optimizer.convergence_tol") c.optimizer.convergence_tol = kv.get_double(key);
    else if (key == "optimizer.population") c.optimizer.population = static_cast<int>(kv.get_int(key));
    else if (key == "optimizer.fd_step") c.optimizer.fd_step = kv.get_double(key);
    else if (key == "executor") {
      if (value == "exact") c.executor = ExecutorKind::Exact;
      else if (value == "emulator") c.executor = ExecutorKind::Emulator;
      else throw ConfigError(key, "expected 'exact' or 'emulator'");
    } else if (key == "noise.config") c.noise_config = value;
    else if (key == "shots") c.shots = static_cast<int>(kv.get_int(key));
    else if (key == "trials") c.trials = static_cast<int>(kv.get_int(key));
    else if (key == "fine_tune.enabled") c.fine_tune = kv.get_bool(key);
    else if (key == "fine_tune.half_width") c.scan.half_width = kv.get_double(key);
    else if (key == "fine_tune.grid") c.scan.grid = static_cast<int>(kv.get_int(key));
    else if (key == "fine_tune.passes") c.scan.passes = static_cast<int>(kv.get_int(key));
    else if (key == "fine_tune.shots_per_point") c.scan.shots_per_point = static_cast<int>(kv.get_int(key));
    else if (key == "fine_tune.target") {
      if (value == "test") c.tune_target = TuneTarget::Test;
      else if (value == "validation") c.tune_target = TuneTarget::Validation;
      else throw ConfigError(key, "expected 'test' or 'validation'");
    } else if (key == "fine_tune.n_validation") c.n_validation = size(key);
    else if (key == "baselines.enabled") c.baselines = kv.get_bool(key);
    else if (key == "baselines.epochs") c.nn_epochs = size(key);
    else if (key == "baselines.restarts") c.nn_restarts = size(key);
    else if (key == "output_dir") c.output_dir = value;
    else throw ConfigError(key, "unknown key");
  }
  c.validate();
  return c;
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char ch : serialize()) {
    h ^= ch;
    h *= 0x100000001B3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Dataset train_split(const ExperimentConfig& cfg) {
  return sample_dataset(cfg.problem, cfg.n_train, mix_key({cfg.seed, kTrainTag}));
}

Dataset test_split(const ExperimentConfig& cfg) {
  return sample_dataset(cfg.problem, cfg.n_test, mix_key({cfg.seed, kTestTag}));
}

Dataset validation_split(const ExperimentConfig& cfg) {
  return sample_dataset(cfg.problem, cfg.n_validation, mix_key({cfg.seed, kValidationTag}));
}

EmulatorExecutor resolve_emulator(const ExperimentConfig& cfg) {
  auto [hw, noise] = calibrated_default();
  if (!cfg.noise_config.empty()) {
    std::ifstream in(cfg.noise_config);
    if (!in) throw ConfigError("noise.config", "cannot open '" + cfg.noise_config + "'");
    load_profiles(in, hw, noise);
  }
  noise.shots = cfg.shots;
  return EmulatorExecutor(hw, noise);
}

BenchRow run_experiment(const ExperimentConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  BenchRow row;
  row.problem = std::string(to_string(cfg.problem));
  row.ansatz = std::string(to_string(cfg.ansatz));
  row.layers = cfg.layers;
  row.seed = cfg.seed;
  row.config_hash = cfg.hash();
  if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);

  const Dataset train = train_split(cfg);
  const Dataset test = test_split(cfg);
  const LabelStateSet labels = label_states(problem_classes(cfg.problem));

  TrainReport report{ParameterSet::zeros(cfg.ansatz, problem_dim(cfg.problem), cfg.layers), {}, 0, 0, 0, 0, cfg.seed};
  try {
    report = train_simulated(cfg.problem, cfg.layers, cfg.ansatz, train, cfg.optimizer, cfg.seed, &test);
  } catch (const TrainingFailure& e) {
    row.status = std::string("training failed: ") + e.what();
    if (!cfg.output_dir.empty()) {
      const std::string path = checkpoint_path(cfg, "last_valid");
      write_file(path, parameter_set_to_json(e.last_valid()));
      row.checkpoints.push_back(path);
    }
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    throw ExperimentFailure(e.what(), row);
  }
  row.train_loss = report.final_loss;
  row.accuracy_star = report.test_accuracy;
  if (!cfg.output_dir.empty()) {
    const std::string theta_path = checkpoint_path(cfg, "theta_sim");
    write_file(theta_path, parameter_set_to_json(report.theta_sim));
    row.checkpoints.push_back(theta_path);
    const std::string report_path = checkpoint_path(cfg, "train_report");
    write_file(report_path, train_report_to_json(report));
    row.checkpoints.push_back(report_path);
  }

  if (cfg.executor == ExecutorKind::Emulator) {
    const EmulatorExecutor emulator = resolve_emulator(cfg);
    row.accuracy_sim =
        repeated_accuracy(report.theta_sim, test, labels, emulator, cfg.shots, cfg.trials, cfg.seed, kTrialTag);
    if (cfg.fine_tune) {
      const Dataset tune_data = cfg.tune_target == TuneTarget::Test ? test : validation_split(cfg);
      ScanConfig scan = cfg.scan;
      const FineTuneResult tuned =
          fine_tune(report.theta_sim, emulator, tune_data, labels, scan, mix_key({cfg.seed, kScanTag}));
      row.accuracy_q =
          repeated_accuracy(tuned.theta_q, test, labels, emulator, cfg.shots, cfg.trials, cfg.seed, kTuneTrialTag);
      if (!cfg.output_dir.empty()) {
        const std::string path = checkpoint_path(cfg, "theta_q");
        write_file(path, parameter_set_to_json(tuned.theta_q));
        row.checkpoints.push_back(path);
      }
    }
  }

  if (cfg.baselines) {
    const std::size_t quantum = cfg.layers * params_per_layer(cfg.ansatz, problem_dim(cfg.problem));
    row.nn_hidden = match_width(quantum, problem_dim(cfg.problem), problem_classes(cfg.problem));
    NNTrainOptions opt;
    opt.epochs = cfg.nn_epochs;
    opt.restarts = cfg.nn_restarts;
    const NNModel nn = train_nn(train, row.nn_hidden, std::nullopt, cfg.seed, opt);
    row.nn_activation = std::string(to_string(nn.activation));
    row.accuracy_nn = nn_accuracy(nn, test);
    if (!cfg.output_dir.empty()) {
      const std::string path = checkpoint_path(cfg, "nn");
      write_file(path, nn_to_json(nn));
      row.checkpoints.push_back(path);
    }
  }
  row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::string bench_report_to_json(const BenchReport& report) {
  Json rows = Json::array();
  for (const BenchRow& r : report.rows) {
    Json j;
    j["problem"] = r.problem;
    j["ansatz"] = r.ansatz;
    j["layers"] = r.layers;
    j["seed"] = r.seed;
    j["config_hash"] = r.config_hash;
    j["status"] = r.status;
    j["train_loss"] = r.train_loss;
    j["accuracy_star"] = r.accuracy_star;
    j["accuracy_sim"] = r.accuracy_sim ? mean_std_json(*r.accuracy_sim) : Json(nullptr);
    j["accuracy_q"] = r.accuracy_q ? mean_std_json(*r.accuracy_q) : Json(nullptr);
    j["accuracy_nn"] = r.accuracy_nn ? Json(*r.accuracy_nn) : Json(nullptr);
    j["nn_hidden"] = r.nn_hidden;
    j["nn_activation"] = r.nn_activation;
    j["checkpoints"] = r.checkpoints;
    j["wall_time"] = r.wall_time;
    rows.push_back(std::move(j));
  }
  Json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2);
}

void export_boundary_grid(const ParameterSet& theta, const LabelStateSet& labels, std::size_t resolution,
                          const Executor& executor, std::ostream& out) {
  if (theta.dim() != 2) throw Unsupported("boundary grids are only defined for 2D problems");
  if (resolution < 2) throw InvalidArgument("grid resolution must be at least 2");
  out << "x1,x2,class\n";
  char buf[64];
  std::vector<double> x(2);
  std::size_t index = 0;
  for (std::size_t i = 0; i < resolution; ++i) {
    x[0] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(resolution - 1);
    for (std::size_t j = 0; j < resolution; ++j, ++index) {
      x[1] = -1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(resolution - 1);
      const std::size_t guess = guess_class(fidelities(theta, x, labels, executor, 0x6121D, index));
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", x[0], x[1], guess);
      out << buf;
    }
  }
}

void export_boundary_grid(const ParameterSet& theta, const LabelStateSet& labels, std::size_t resolution,
                          const Executor& executor, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  export_boundary_grid(theta, labels, resolution, executor, out);
}

std::vector<TableEntry> table_entries() {
  return {
      {Problem::Circle, Ansatz::A, true},        {Problem::Crown, Ansatz::B, false},
      {Problem::NonConvex, Ansatz::B, false},    {Problem::Sphere, Ansatz::A, false},
      {Problem::Hypersphere, Ansatz::A, true},   {Problem::Tricrown, Ansatz::A, false},
      {Problem::ThreeCircles, Ansatz::B, false}, {Problem::Squares, Ansatz::A, false},
      {Problem::WavyLines, Ansatz::A, false},
  };
}

BenchReport reproduce_table(const std::string& out_path, const ExperimentConfig& base) {
  BenchReport report;
  for (const TableEntry& e : table_entries()) {
    ExperimentConfig cfg = base;
    cfg.problem = e.problem;
    cfg.ansatz = e.ansatz;
    cfg.layers = 4;
    cfg.executor = ExecutorKind::Emulator;
    cfg.shots = 100;
    cfg.fine_tune = e.fine_tune;
    cfg.baselines = true;
    report.rows.push_back(run_experiment(cfg));
    if (!out_path.empty()) write_file(out_path, bench_report_to_json(report));
  }
  return report;
}

BenchReport layer_sweep(const ExperimentConfig& base, std::size_t max_layers, std::size_t seeds) {
  BenchReport report;
  for (std::size_t layers = 1; layers <= max_layers; ++layers) {
    for (std::size_t s = 0; s < seeds; ++s) {
      ExperimentConfig cfg = base;
      cfg.layers = layers;
      cfg.seed = base.seed + s;
      report.rows.push_back(run_experiment(cfg));
    }
  }
  return report;
}

std::string format_table(const BenchReport& report) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-6s %2s %6s %7s %13s %13s %6s\n", "problem", "ansatz", "L", "A_NN", "A*",
                "A_sim", "A_q", "seed");
  out << buf;
  auto pct = [](double v) { return 100.0 * v; };
  for (const BenchRow& r : report.rows) {
    char sim[32] = "-", q[32] = "-", nn[16] = "-";
    if (r.accuracy_sim) std::snprintf(sim, sizeof sim, "%.1f+-%.1f", pct(r.accuracy_sim->mean), pct(r.accuracy_sim->std));
    if (r.accuracy_q) std::snprintf(q, sizeof q, "%.1f+-%.1f", pct(r.accuracy_q->mean), pct(r.accuracy_q->std));
    if (r.accuracy_nn) std::snprintf(nn, sizeof nn, "%.1f", pct(*r.accuracy_nn));
    std::snprintf(buf, sizeof buf, "%-14s %-6s %2zu %6s %7.1f %13s %13s %6llu\n", r.problem.c_str(), r.ansatz.c_str(),
                  r.layers, nn, pct(r.accuracy_star), sim, q, static_cast<unsigned long long>(r.seed));
    out << buf;
  }
  return out.str();
}

}  // namespace reupload
