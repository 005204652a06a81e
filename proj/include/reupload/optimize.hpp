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
#include <functional>
#include <span>
#include <vector>

namespace reupload::opt {

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<std::vector<double>(std::span<const double>)>;

struct Result {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

struct CmaOptions {
  int population = 12;
  double sigma0 = 1.0;
  std::size_t max_evaluations = 10000;
  /// Stop once the best value over a window of recent generations varies by
  /// less than this.
  double tolerance = 1e-6;
  std::uint64_t seed = 0;
};

/// Separable CMA-ES (diagonal covariance, Ros & Hansen 2008) with
/// rank-one and rank-mu updates and cumulative step-size adaptation.
Result sep_cma_es(const Objective& f, std::vector<double> mean, const CmaOptions& options);

struct LbfgsOptions {
  std::size_t memory = 10;
  std::size_t max_evaluations = 10000;
  /// Each gradient call is charged this many objective evaluations.
  std::size_t gradient_cost = 0;
  double tolerance = 1e-6;
  double gradient_tolerance = 1e-8;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Box-constrained limited-memory BFGS: two-loop recursion on the free
/// variables, projected backtracking (Armijo) line search.
Result lbfgs_b(const Objective& f, const Gradient& grad, std::vector<double> x0, const LbfgsOptions& options);

}  // namespace reupload::opt
