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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace reupload {

/// The nine benchmark problems.
enum class Problem {
  Circle,
  Crown,
  NonConvex,
  Sphere,
  Hypersphere,
  Tricrown,
  ThreeCircles,
  Squares,
  WavyLines,
};

inline constexpr Problem kAllProblems[] = {Problem::Circle,      Problem::Crown,    Problem::NonConvex,
                                           Problem::Sphere,      Problem::Hypersphere, Problem::Tricrown,
                                           Problem::ThreeCircles, Problem::Squares, Problem::WavyLines};

std::string_view to_string(Problem p);
Problem parse_problem(std::string_view name);

std::size_t problem_dim(Problem p);
std::size_t problem_classes(Problem p);

struct Sample {
  std::vector<double> x;
  std::size_t c = 0;
};

struct Dataset {
  Problem problem = Problem::Circle;
  std::vector<Sample> samples;
  std::uint64_t seed = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

/// Boundary radii. Each "half the feature space" radius r solves
/// vol(ball_d(r)) = 2^d / 2.
namespace geometry {
double circle_radius();       // sqrt(2/pi)
double sphere_radius();       // (3/pi)^(1/3)
double hypersphere_radius();  // 2/sqrt(pi), larger than 1 so the ball is clipped
double crown_inner_radius();  // circle_radius / sqrt(2)
double three_circles_radius();
}  // namespace geometry

/// Ground-truth class of x. Points on a boundary go to the inner/first class.
std::size_t label_point(Problem problem, std::span<const double> x);

/// n points uniform on [-1, 1]^dim from the Philox stream keyed by
/// (problem, seed); point i uses counter block i only.
Dataset sample_dataset(Problem problem, std::size_t n, std::uint64_t seed);

/// Exact fraction of [-1, 1]^dim occupied by each class. Closed form where
/// available, otherwise one-dimensional quadrature accurate to well under 1e-4.
std::vector<double> class_balance(Problem problem);

/// CSV with header `x1,...,xd,class`, 17 significant digits.
void write_dataset_csv(std::ostream& out, const Dataset& data);
/// Rejects rows whose coordinates leave [-1, 1] or whose class is out of range.
Dataset read_dataset_csv(std::istream& in, Problem problem);

}  // namespace reupload
