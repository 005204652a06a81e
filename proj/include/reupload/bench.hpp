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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reupload/baselines.hpp"
#include "reupload/circuit.hpp"
#include "reupload/datasets.hpp"
#include "reupload/emulator.hpp"
#include "reupload/errors.hpp"
#include "reupload/training.hpp"

namespace reupload {

enum class ExecutorKind { Exact, Emulator };

/// Which data the fine-tuning scan maximizes accuracy on. `Test` is the
/// reference protocol and leaks the test set into tuning; `Validation` uses a
/// separate draw of `n_validation` points.
enum class TuneTarget { Test, Validation };

struct ExperimentConfig {
  Problem problem = Problem::Circle;
  Ansatz ansatz = Ansatz::A;
  std::size_t layers = 4;
  std::size_t n_train = 200;
  std::size_t n_test = 1000;
  std::uint64_t seed = 1;
  OptimizerConfig optimizer;
  ExecutorKind executor = ExecutorKind::Exact;
  /// Profile file for the emulator; empty selects calibrated_default().
  std::string noise_config;
  int shots = 100;
  /// Repeated emulator evaluations behind each mean +- std.
  int trials = 10;
  bool fine_tune = false;
  ScanConfig scan;
  TuneTarget tune_target = TuneTarget::Test;
  std::size_t n_validation = 200;
  bool baselines = false;
  std::size_t nn_epochs = 5000;
  std::size_t nn_restarts = 5;
  /// Directory for checkpoints; empty writes none.
  std::string output_dir;

  void validate() const;
  /// Dotted key=value text; parse(serialize()) reproduces the config.
  std::string serialize() const;
  static ExperimentConfig parse(std::istream& in);
  static ExperimentConfig parse_text(const std::string& text);
  /// FNV-1a of serialize(), 16 hex digits.
  std::string hash() const;

  bool operator==(const ExperimentConfig&) const = default;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
  std::vector<double> values;
};

struct BenchRow {
  std::string problem;
  std::string ansatz;
  std::size_t layers = 0;
  std::uint64_t seed = 0;
  std::string config_hash;
  double train_loss = 0.0;
  double accuracy_star = 0.0;
  std::optional<MeanStd> accuracy_sim;
  std::optional<MeanStd> accuracy_q;
  std::optional<double> accuracy_nn;
  std::size_t nn_hidden = 0;
  std::string nn_activation;
  std::vector<std::string> checkpoints;
  std::string status = "ok";
  double wall_time = 0.0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
};

std::string bench_report_to_json(const BenchReport& report);

/// Raised when training fails mid-experiment; carries the row as far as it got.
class ExperimentFailure : public TrainingError {
 public:
  ExperimentFailure(const std::string& what, BenchRow partial) : TrainingError(what), partial_(std::move(partial)) {}
  const BenchRow& partial() const { return partial_; }

 private:
  BenchRow partial_;
};

/// Data splits for a config; each split has its own derived seed.
Dataset train_split(const ExperimentConfig& cfg);
Dataset test_split(const ExperimentConfig& cfg);
Dataset validation_split(const ExperimentConfig& cfg);

/// Emulator settings named by the config. Only called on the emulator path.
EmulatorExecutor resolve_emulator(const ExperimentConfig& cfg);

/// Train, evaluate A*, and on the emulator path A^sim over `trials` shot
/// realizations, optional fine-tuning (A^q) and NN baseline.
BenchRow run_experiment(const ExperimentConfig& cfg);

/// Guessed class on a resolution x resolution grid over [-1, 1]^2 (endpoints
/// included), CSV `x1,x2,class`.
void export_boundary_grid(const ParameterSet& theta, const LabelStateSet& labels, std::size_t resolution,
                          const Executor& executor, std::ostream& out);
void export_boundary_grid(const ParameterSet& theta, const LabelStateSet& labels, std::size_t resolution,
                          const Executor& executor, const std::string& path);

struct TableEntry {
  Problem problem;
  Ansatz ansatz;
  bool fine_tune;
};

/// Problem/ansatz assignment of the reference comparison table; fine-tuning
/// only for circle and hypersphere.
std::vector<TableEntry> table_entries();

/// Runs every table entry at L = 4 on the emulator with 100 shots, with the
/// NN baseline, starting from `base` for all other settings. Writes the JSON
/// report to `out_path` when non-empty.
BenchReport reproduce_table(const std::string& out_path, const ExperimentConfig& base = {});

/// Circle-style layer sweep: one row per (layers, seed).
BenchReport layer_sweep(const ExperimentConfig& base, std::size_t max_layers, std::size_t seeds);

/// Plain-text table with one line per row.
std::string format_table(const BenchReport& report);

}  // namespace reupload
