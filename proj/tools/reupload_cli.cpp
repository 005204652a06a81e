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

// Command-line front end: train, evaluate, fine-tune, grid, table, dataset,
// emulate and sweep.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include "reupload/bench.hpp"
#include "reupload/classifier.hpp"
#include "reupload/keyvalue.hpp"
#include "reupload/serialize.hpp"

namespace {

using namespace reupload;

constexpr int kExitConfig = 1;
constexpr int kExitTraining = 2;

// Flag values that override the config file when given.
struct Overrides {
  std::string config_path;
  std::optional<std::string> problem, ansatz, method, executor, noise_config, output_dir, target;
  std::optional<std::size_t> layers, n_train, n_test, max_evaluations, restarts, n_validation, epochs;
  std::optional<std::uint64_t> seed;
  std::optional<int> shots, trials, grid, passes;
  std::optional<double> half_width;
  bool fine_tune = false, no_fine_tune = false, baselines = false, no_baselines = false;
};

void add_experiment_flags(CLI::App* app, Overrides& o) {
  app->add_option("-c,--config", o.config_path, "key=value experiment config");
  app->add_option("--problem", o.problem, "problem name");
  app->add_option("--ansatz", o.ansatz, "A or B");
  app->add_option("--layers", o.layers, "layer count L");
  app->add_option("--n-train", o.n_train);
  app->add_option("--n-test", o.n_test);
  app->add_option("--seed", o.seed);
  app->add_option("--optimizer", o.method, "evolutionary or quasi-newton");
  app->add_option("--max-evaluations", o.max_evaluations, "loss evaluations per restart");
  app->add_option("--restarts", o.restarts);
  app->add_option("--executor", o.executor, "exact or emulator");
  app->add_option("--noise-config", o.noise_config, "hardware/noise profile file");
  app->add_option("--shots", o.shots);
  app->add_option("--trials", o.trials, "repeated emulator evaluations");
  app->add_flag("--fine-tune", o.fine_tune);
  app->add_flag("--no-fine-tune", o.no_fine_tune);
  app->add_option("--scan-half-width", o.half_width);
  app->add_option("--scan-grid", o.grid);
  app->add_option("--scan-passes", o.passes);
  app->add_option("--tune-target", o.target, "test or validation");
  app->add_option("--n-validation", o.n_validation);
  app->add_flag("--baselines", o.baselines);
  app->add_flag("--no-baselines", o.no_baselines);
  app->add_option("--nn-epochs", o.epochs);
  app->add_option("--output-dir", o.output_dir, "checkpoint directory");
}

ExperimentConfig build_config(const Overrides& o) {
  ExperimentConfig base;
  if (!o.config_path.empty()) {
    std::ifstream in(o.config_path);
    if (!in) throw ConfigError("config", "cannot open '" + o.config_path + "'");
    base = ExperimentConfig::parse(in);
  }
  // Route overrides through the text form so they get the same validation.
  std::istringstream serialized(base.serialize());
  KeyValueFile kv = KeyValueFile::parse(serialized);
  auto put = [&](const char* key, const auto& value) {
    if (!value) return;
    if constexpr (std::is_same_v<std::decay_t<decltype(*value)>, std::string>) kv.set(key, *value);
    else if constexpr (std::is_floating_point_v<std::decay_t<decltype(*value)>>) kv.set_double(key, *value);
    else kv.set(key, std::to_string(*value));
  };
  put("problem", o.problem);
  put("ansatz", o.ansatz);
  put("layers", o.layers);
  put("n_train", o.n_train);
  put("n_test", o.n_test);
  put("seed", o.seed);
  put("optimizer.method", o.method);
  put("optimizer.max_evaluations", o.max_evaluations);
  put("optimizer.restarts", o.restarts);
  put("executor", o.executor);
  put("noise.config", o.noise_config);
  put("shots", o.shots);
  put("trials", o.trials);
  put("fine_tune.half_width", o.half_width);
  put("fine_tune.grid", o.grid);
  put("fine_tune.passes", o.passes);
  put("fine_tune.target", o.target);
  put("fine_tune.n_validation", o.n_validation);
  put("baselines.epochs", o.epochs);
  put("output_dir", o.output_dir);
  if (o.fine_tune) kv.set("fine_tune.enabled", "on");
  if (o.no_fine_tune) kv.set("fine_tune.enabled", "off");
  if (o.baselines) kv.set("baselines.enabled", "on");
  if (o.no_baselines) kv.set("baselines.enabled", "off");
  std::ostringstream text;
  kv.write(text);
  return ExperimentConfig::parse_text(text.str());
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") std::cout << text << (text.ends_with('\n') ? "" : "\n");
  else write_file(path, text);
}

std::unique_ptr<Executor> make_executor(const ExperimentConfig& cfg) {
  if (cfg.executor == ExecutorKind::Exact) return std::make_unique<ExactExecutor>();
  return std::make_unique<EmulatorExecutor>(resolve_emulator(cfg));
}

ParameterSet load_theta(const std::string& path, const ExperimentConfig& cfg) {
  ParameterSet theta = parameter_set_from_json(read_file(path));
  if (theta.dim() != problem_dim(cfg.problem))
    throw ConfigError("theta", "checkpoint dimension does not match problem '" + std::string(to_string(cfg.problem)) + "'");
  return theta;
}

Dataset load_data(const std::string& path, const ExperimentConfig& cfg) {
  if (path.empty()) return test_split(cfg);
  std::ifstream in(path);
  if (!in) throw ConfigError("data", "cannot open '" + path + "'");
  return read_dataset_csv(in, cfg.problem);
}

nlohmann::ordered_json accuracy_json(const std::vector<double>& values) {
  double mean = 0.0, ss = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  for (double v : values) ss += (v - mean) * (v - mean);
  nlohmann::ordered_json j;
  j["mean"] = mean;
  j["std"] = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  j["values"] = values;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-qubit data re-uploading classifier"};
  app.require_subcommand(1);
  Overrides o;
  std::string out_path, theta_path, data_path, sequence_path;
  std::size_t resolution = 100, count = 200, max_layers = 4, seeds = 5;

  auto* train = app.add_subcommand("train", "train on simulation and report accuracies");
  add_experiment_flags(train, o);
  train->add_option("-o,--out", out_path, "JSON report path (stdout if omitted)");

  auto* evaluate_cmd = app.add_subcommand("evaluate", "accuracy of a checkpoint");
  add_experiment_flags(evaluate_cmd, o);
  evaluate_cmd->add_option("--theta", theta_path, "parameter checkpoint")->required();
  evaluate_cmd->add_option("--data", data_path, "dataset CSV (default: the config's test split)");
  evaluate_cmd->add_option("-o,--out", out_path);

  auto* tune = app.add_subcommand("fine-tune", "pairwise scan of a checkpoint on the emulator");
  add_experiment_flags(tune, o);
  tune->add_option("--theta", theta_path, "starting checkpoint")->required();
  tune->add_option("--data", data_path, "scan dataset CSV (default: the tune target split)");
  tune->add_option("-o,--out", out_path, "tuned checkpoint path")->required();

  auto* grid = app.add_subcommand("grid", "decision-boundary grid for a 2D checkpoint");
  add_experiment_flags(grid, o);
  grid->add_option("--theta", theta_path)->required();
  grid->add_option("--resolution", resolution);
  grid->add_option("-o,--out", out_path, "CSV path (stdout if omitted)");

  auto* table = app.add_subcommand("table", "run the nine-problem comparison matrix");
  add_experiment_flags(table, o);
  table->add_option("-o,--out", out_path, "JSON report path");

  auto* sweep = app.add_subcommand("sweep", "layer sweep L = 1..max over several seeds");
  add_experiment_flags(sweep, o);
  sweep->add_option("--max-layers", max_layers);
  sweep->add_option("--seeds", seeds);
  sweep->add_option("-o,--out", out_path);

  auto* dataset = app.add_subcommand("dataset", "sample a labeled dataset as CSV");
  add_experiment_flags(dataset, o);
  dataset->add_option("-n,--count", count);
  dataset->add_option("-o,--out", out_path);

  auto* emulate = app.add_subcommand("emulate", "run a pulse sequence file on the emulator");
  add_experiment_flags(emulate, o);
  emulate->add_option("--sequence", sequence_path, "gamma,delta per line")->required();
  emulate->add_option("-o,--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const ExperimentConfig cfg = build_config(o);
    if (*train) {
      const BenchRow row = run_experiment(cfg);
      emit(bench_report_to_json(BenchReport{{row}}), out_path);
    } else if (*evaluate_cmd) {
      const ParameterSet theta = load_theta(theta_path, cfg);
      const Dataset data = load_data(data_path, cfg);
      const LabelStateSet labels = label_states(problem_classes(cfg.problem));
      const auto executor = make_executor(cfg);
      std::vector<double> acc;
      const int trials = executor->exact() ? 1 : cfg.trials;
      for (int t = 0; t < trials; ++t)
        acc.push_back(evaluate(theta, data, labels, *executor, cfg.shots, mix_key({cfg.seed, 0xE7A1ull, std::uint64_t(t)})).accuracy);
      nlohmann::ordered_json j;
      j["problem"] = to_string(cfg.problem);
      j["executor"] = executor->exact() ? "exact" : "emulator";
      j["samples"] = data.samples.size();
      j["accuracy"] = accuracy_json(acc);
      emit(j.dump(2), out_path);
    } else if (*tune) {
      if (cfg.executor != ExecutorKind::Emulator) throw ConfigError("executor", "fine-tune requires the emulator");
      const ParameterSet theta = load_theta(theta_path, cfg);
      const Dataset data = !data_path.empty()                        ? load_data(data_path, cfg)
                           : cfg.tune_target == TuneTarget::Validation ? validation_split(cfg)
                                                                       : test_split(cfg);
      const FineTuneResult r = fine_tune(theta, resolve_emulator(cfg), data,
                                         label_states(problem_classes(cfg.problem)), cfg.scan, cfg.seed);
      write_file(out_path, parameter_set_to_json(r.theta_q));
      std::printf("accuracy %.4f -> %.4f over %zu scan steps\n", r.accuracy_start, r.accuracy_final, r.trace.size());
    } else if (*grid) {
      const ParameterSet theta = load_theta(theta_path, cfg);
      const auto executor = make_executor(cfg);
      const LabelStateSet labels = label_states(problem_classes(cfg.problem));
      if (out_path.empty() || out_path == "-") export_boundary_grid(theta, labels, resolution, *executor, std::cout);
      else export_boundary_grid(theta, labels, resolution, *executor, out_path);
    } else if (*table) {
      const BenchReport report = reproduce_table(out_path, cfg);
      std::cout << format_table(report);
    } else if (*sweep) {
      const BenchReport report = layer_sweep(cfg, max_layers, seeds);
      if (!out_path.empty()) write_file(out_path, bench_report_to_json(report));
      std::cout << format_table(report);
    } else if (*dataset) {
      std::ostringstream csv;
      write_dataset_csv(csv, sample_dataset(cfg.problem, count, cfg.seed));
      emit(csv.str(), out_path);
    } else if (*emulate) {
      std::ifstream in(sequence_path);
      if (!in) throw ConfigError("sequence", "cannot open '" + sequence_path + "'");
      const auto pulses = read_sequence(in);
      const EmulatorExecutor em = resolve_emulator(cfg);
      emit(shot_outcome_json(noisy_execute(pulses, em.hardware(), em.noise(), cfg.seed)), out_path);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const ExperimentFailure& e) {
    std::fprintf(stderr, "training failed: %s\n", e.what());
    std::cout << bench_report_to_json(BenchReport{{e.partial()}}) << "\n";
    return kExitTraining;
  } catch (const TrainingError& e) {
    std::fprintf(stderr, "training failed: %s\n", e.what());
    return kExitTraining;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return 0;
}
