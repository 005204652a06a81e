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
#include <span>
#include <vector>

#include "reupload/circuit.hpp"
#include "reupload/datasets.hpp"

namespace reupload {

struct Prediction {
  std::vector<double> fidelities;
  std::vector<double> probabilities;
  std::size_t guess = 0;
};

/// Fidelities divided by their sum. Throws DegenerateInput when all are zero.
std::vector<double> class_probabilities(std::span<const double> fidelities);

/// argmax; ties go to the lowest index.
std::size_t guess_class(std::span<const double> fidelities);

/// Stream key used for (sample, class) when an evaluation is keyed by
/// `stream_seed`. Shared by every routine that measures through an executor.
std::uint64_t sample_stream(std::uint64_t stream_seed, std::size_t sample, std::size_t label);

/// Fidelity of x's circuit against every label, measured through `executor`.
std::vector<double> fidelities(const ParameterSet& theta, std::span<const double> x, const LabelStateSet& labels,
                               const Executor& executor, std::uint64_t stream_seed = 0, std::size_t sample = 0);

Prediction predict(const ParameterSet& theta, std::span<const double> x, const LabelStateSet& labels,
                   const Executor& executor, std::uint64_t stream_seed = 0, std::size_t sample = 0);

/// Mean of (F_true - 1)^2 over samples, accumulated in sample order.
double chi2_loss(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                 const Executor& executor, std::uint64_t stream_seed = 0);

/// Fraction of samples whose guessed class matches the label.
double accuracy(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                const Executor& executor, std::uint64_t stream_seed = 0);

}  // namespace reupload
