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
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reupload/circuit.hpp"
#include "reupload/classifier.hpp"
#include "reupload/datasets.hpp"
#include "reupload/errors.hpp"

namespace reupload {

enum class OptimizerMethod { Evolutionary, QuasiNewton };

std::string_view to_string(OptimizerMethod m);
OptimizerMethod parse_optimizer_method(std::string_view s);

struct OptimizerConfig {
  OptimizerMethod method = OptimizerMethod::Evolutionary;
  /// Objective evaluations per restart.
  std::size_t max_evaluations = 10000;
  std::size_t restarts = 5;
  /// CMA-ES step size; for the quasi-Newton method, the half-width of the
  /// box bound around zero is 4 pi regardless.
  double initial_spread = 1.0;
  double convergence_tol = 1e-6;
  int population = 12;
  /// Central-difference step for the quasi-Newton gradient.
  double fd_step = 1e-5;

  void validate() const;
  bool operator==(const OptimizerConfig&) const = default;
};

struct ScanConfig {
  double half_width = 0.3;
  int grid = 7;
  int passes = 3;
  int shots_per_point = 100;

  void validate() const;
  bool operator==(const ScanConfig&) const = default;
};

struct LossPoint {
  std::size_t evaluation = 0;
  double loss = 0.0;
};

struct TrainReport {
  ParameterSet theta_sim;
  /// Best-so-far chi^2 recorded at each improvement.
  std::vector<LossPoint> loss_history;
  double final_loss = 0.0;
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  double wall_time = 0.0;
  std::uint64_t seed = 0;
};

/// Optimizer produced a non-finite loss. Carries the last parameters whose
/// loss was finite.
class TrainingFailure : public TrainingError {
 public:
  TrainingFailure(const std::string& what, ParameterSet last_valid)
      : TrainingError(what), last_valid_(std::move(last_valid)) {}
  const ParameterSet& last_valid() const { return last_valid_; }

 private:
  ParameterSet last_valid_;
};

/// Minimizes chi^2 on `train` with the exact simulator; keeps the best of
/// `cfg.restarts` runs, each started uniformly in [-pi, pi]. Deterministic in
/// `seed`. When `test` is given its exact accuracy is reported.
TrainReport train_simulated(Problem problem, std::size_t layers, Ansatz ansatz, const Dataset& train,
                            const OptimizerConfig& cfg, std::uint64_t seed, const Dataset* test = nullptr);

/// Same, with an explicit starting point instead of random restarts.
TrainReport train_from(const ParameterSet& start, const Dataset& train, const LabelStateSet& labels,
                       const OptimizerConfig& cfg, std::uint64_t seed, const Dataset* test = nullptr);

/// Central finite-difference gradient of chi^2 (exact simulator), flattened
/// in canonical parameter order.
std::vector<double> fd_gradient(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                                double step);

struct ScanStep {
  int pass = 0;
  std::size_t first = 0;  // pair (first, first + 1) in canonical order
  double accuracy = 0.0;
  bool moved = false;
};

struct FineTuneResult {
  ParameterSet theta_q;
  /// Accuracy at the starting point, then one entry per scanned pair.
  std::vector<ScanStep> trace;
  /// theta_sim and theta_q measured with one shared evaluation key.
  double accuracy_start = 0.0;
  double accuracy_final = 0.0;
};

/// Sequential pairwise grid scan. For each consecutive pair of parameters,
/// accuracy is measured on a grid x grid box around the current values and
/// the pair moves to the best point (ties: smallest move). Within a pass no
/// parameter leaves [start - half_width, start + half_width]. Stops after
/// `passes` passes or a pass without moves. If the final comparison measures
/// theta_q below theta_sim, theta_sim is returned.
FineTuneResult fine_tune(const ParameterSet& theta_sim, const Executor& executor, const Dataset& eval_data,
                         const LabelStateSet& labels, const ScanConfig& cfg, std::uint64_t scan_seed = 0);

struct Evaluation {
  double accuracy = 0.0;
  std::vector<Prediction> predictions;
};

/// Accuracy under `executor` at `shots` repetitions (ignored by the exact
/// executor). `stream_seed` selects the shot-noise realization.
Evaluation evaluate(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                    const Executor& executor, int shots, std::uint64_t stream_seed = 0);

}  // namespace reupload
