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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reupload/datasets.hpp"

namespace reupload {

enum class Activation { Tanh, Relu, Logistic };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view s);

/// Single-hidden-layer network with a k-way softmax output.
struct NNModel {
  std::size_t input_dim = 0;
  std::size_t hidden = 0;
  std::size_t classes = 0;
  Activation activation = Activation::Tanh;
  std::vector<double> w1;  // hidden x input, row-major
  std::vector<double> b1;  // hidden
  std::vector<double> w2;  // classes x hidden, row-major
  std::vector<double> b2;  // classes
  /// Best-so-far training cross-entropy, one entry per epoch.
  std::vector<double> loss_history;

  static NNModel zeros(std::size_t input_dim, std::size_t hidden, std::size_t classes, Activation act);

  std::size_t parameter_count() const { return w1.size() + b1.size() + w2.size() + b2.size(); }
  /// Flat view order: w1, b1, w2, b2.
  std::vector<double> flat() const;
  void set_flat(std::span<const double> flat);

  std::vector<double> softmax(std::span<const double> x) const;
  std::size_t predict(std::span<const double> x) const;
};

/// Largest h with h (d + 1) + (h + 1) k <= quantum_params. Throws when even
/// h = 1 does not fit.
std::size_t match_width(std::size_t quantum_params, std::size_t d, std::size_t k);

struct NNTrainOptions {
  std::size_t epochs = 5000;
  double learning_rate = 0.05;
  double momentum = 0.9;
  std::size_t restarts = 5;
};

/// Mean cross-entropy over `data`.
double nn_loss(const NNModel& model, const Dataset& data);
/// Analytic gradient of nn_loss, flat order as NNModel::flat().
std::vector<double> nn_gradient(const NNModel& model, const Dataset& data);

/// Full-batch gradient descent with momentum on cross-entropy; best of
/// `restarts` by training loss. With no activation given, every activation is
/// tried and the one with the best training accuracy (then loss) is kept.
NNModel train_nn(const Dataset& train, std::size_t hidden, std::optional<Activation> activation,
                 std::uint64_t seed, const NNTrainOptions& options = {});

double nn_accuracy(const NNModel& model, const Dataset& data);

std::string nn_to_json(const NNModel& model);
NNModel nn_from_json(const std::string& text);

}  // namespace reupload
