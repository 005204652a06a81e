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

#include "reupload/datasets.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "reupload/errors.hpp"
#include "reupload/rng.hpp"

namespace reupload {

namespace {

constexpr double kPi = std::numbers::pi;

struct ProblemInfo {
  Problem id;
  std::string_view name;
  std::size_t dim;
  std::size_t classes;
};

constexpr ProblemInfo kInfo[] = {
    {Problem::Circle, "circle", 2, 2},
    {Problem::Crown, "crown", 2, 2},
    {Problem::NonConvex, "non-convex", 2, 2},
    {Problem::Sphere, "sphere", 3, 2},
    {Problem::Hypersphere, "hypersphere", 4, 2},
    {Problem::Tricrown, "tricrown", 2, 3},
    {Problem::ThreeCircles, "three-circles", 2, 4},
    {Problem::Squares, "squares", 2, 4},
    {Problem::WavyLines, "wavy-lines", 2, 4},
};

const ProblemInfo& info(Problem p) { return kInfo[static_cast<int>(p)]; }

double norm_sq(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}

double non_convex_frontier(double x1) {
  return -x1 + 0.5 * std::sin(kPi * x1) + 0.3 * std::sin(3.0 * kPi * x1);
}

// Wavy lines: y = sin(pi x1) + x1 and y = sin(pi x1) - x1.
void wavy_curves(double x1, double& lo, double& hi) {
  const double base = std::sin(kPi * x1);
  lo = base - std::abs(x1);
  hi = base + std::abs(x1);
}

constexpr std::array<std::array<double, 2>, 3> kThreeCircleCenters{{{-0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}}};

// Composite Simpson over [-1, 1].
template <typename F>
double simpson(F&& f, int intervals) {
  const double h = 2.0 / intervals;
  double acc = f(-1.0) + f(1.0);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(-1.0 + i * h);
  return acc * h / 3.0;
}

template <typename F>
double simpson_range(F&& f, double a, double b, int intervals) {
  if (b <= a) return 0.0;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

// Area of {u in [0,1]^2 : |u|^2 <= t}.
double quarter_disc_area(double t) {
  if (t <= 0.0) return 0.0;
  if (t <= 1.0) return kPi * t / 4.0;
  if (t >= 2.0) return 1.0;
  return std::sqrt(t - 1.0) + t * (kPi / 4.0 - std::acos(1.0 / std::sqrt(t)));
}

// d/dt quarter_disc_area.
double quarter_disc_density(double t) {
  if (t <= 0.0 || t >= 2.0) return 0.0;
  if (t <= 1.0) return kPi / 4.0;
  return kPi / 4.0 - std::acos(1.0 / std::sqrt(t));
}

// Fraction of [-1,1]^4 inside the ball of radius r: P(S_a + S_b <= r^2) where
// S_a, S_b are independent copies of |u|^2, u uniform on [0,1]^2.
double clipped_four_ball_fraction(double r) {
  const double r2 = r * r;
  auto integrand = [&](double s) { return quarter_disc_density(s) * quarter_disc_area(r2 - s); };
  // Split at the kinks of both factors.
  std::vector<double> knots{0.0, 1.0, 2.0, r2 - 1.0, r2 - 2.0, r2};
  std::erase_if(knots, [](double k) { return k < 0.0 || k > 2.0; });
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
    // Both factors have square-root kinks at the knots; the smoothstep
    // substitution flattens them at either end of each piece.
    const double a = knots[i], b = knots[i + 1];
    auto g = [&](double v) {
      const double h = v * v * (3.0 - 2.0 * v);
      return integrand(a + (b - a) * h) * 6.0 * v * (1.0 - v) * (b - a);
    };
    total += simpson_range(g, 0.0, 1.0, 20000);
  }
  return total;
}

}  // namespace

std::string_view to_string(Problem p) { return info(p).name; }

Problem parse_problem(std::string_view name) {
  for (const ProblemInfo& i : kInfo)
    if (i.name == name) return i.id;
  if (name == "3circles" || name == "3-circles") return Problem::ThreeCircles;
  if (name == "wavy" || name == "waves") return Problem::WavyLines;
  if (name == "nonconvex") return Problem::NonConvex;
  throw InvalidArgument("unknown problem '" + std::string(name) + "'");
}

std::size_t problem_dim(Problem p) { return info(p).dim; }
std::size_t problem_classes(Problem p) { return info(p).classes; }

namespace geometry {
double circle_radius() { return std::sqrt(2.0 / kPi); }
double sphere_radius() { return std::cbrt(3.0 / kPi); }
double hypersphere_radius() { return 2.0 / std::sqrt(kPi); }
double crown_inner_radius() { return circle_radius() / std::sqrt(2.0); }
double three_circles_radius() { return circle_radius() / 2.0; }
}  // namespace geometry

std::size_t label_point(Problem problem, std::span<const double> x) {
  if (x.size() != problem_dim(problem))
    throw InvalidArgument("feature dimension " + std::to_string(x.size()) + " does not match problem " +
                          std::string(to_string(problem)));
  for (double v : x)
    if (!(v >= -1.0 && v <= 1.0)) throw InvalidArgument("feature coordinate outside [-1, 1]");

  const double r2 = norm_sq(x);
  switch (problem) {
    case Problem::Circle:
      return r2 <= 2.0 / kPi ? 0 : 1;
    case Problem::Sphere: {
      const double r = geometry::sphere_radius();
      return r2 <= r * r ? 0 : 1;
    }
    case Problem::Hypersphere:
      return r2 <= 4.0 / kPi ? 0 : 1;
    case Problem::Crown: {
      const double ro = geometry::circle_radius(), ri = geometry::crown_inner_radius();
      return (r2 >= ri * ri && r2 <= ro * ro) ? 0 : 1;
    }
    case Problem::Tricrown: {
      const double ro = geometry::circle_radius(), ri = geometry::crown_inner_radius();
      if (r2 <= ri * ri) return 0;
      return r2 <= ro * ro ? 1 : 2;
    }
    case Problem::NonConvex:
      return x[1] < non_convex_frontier(x[0]) ? 0 : 1;
    case Problem::ThreeCircles: {
      const double r = geometry::three_circles_radius();
      for (std::size_t c = 0; c < kThreeCircleCenters.size(); ++c) {
        const double dx = x[0] - kThreeCircleCenters[c][0];
        const double dy = x[1] - kThreeCircleCenters[c][1];
        if (dx * dx + dy * dy <= r * r) return c;
      }
      return 3;
    }
    case Problem::Squares:
      return 2 * (x[1] > 0.0 ? 1 : 0) + (x[0] > 0.0 ? 1 : 0);
    case Problem::WavyLines: {
      double lo, hi;
      wavy_curves(x[0], lo, hi);
      if (x[1] <= lo) return 0;
      if (x[1] > hi) return 3;
      // Between the curves: sin + x1 is the upper one for x1 > 0.
      return x[0] > 0.0 ? 1 : 2;
    }
  }
  throw InvalidArgument("unknown problem");
}

Dataset sample_dataset(Problem problem, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("dataset size must be positive");
  const std::size_t dim = problem_dim(problem);
  const std::uint64_t key = mix_key({0xDA7A5E7ull, static_cast<std::uint64_t>(problem), seed});
  Dataset data;
  data.problem = problem;
  data.seed = seed;
  data.samples.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    CounterRng rng(key, i);
    Sample s;
    s.x.resize(dim);
    for (double& v : s.x) v = rng.uniform(-1.0, 1.0);
    s.c = label_point(problem, s.x);
    data.samples.push_back(std::move(s));
  }
  return data;
}

std::vector<double> class_balance(Problem problem) {
  constexpr int kIntervals = 200000;
  switch (problem) {
    case Problem::Circle:
    case Problem::Sphere:
      return {0.5, 0.5};
    case Problem::Hypersphere: {
      const double inner = clipped_four_ball_fraction(geometry::hypersphere_radius());
      return {inner, 1.0 - inner};
    }
    case Problem::Crown: {
      // Annulus area pi (ro^2 - ri^2) = 1 out of 4.
      return {0.25, 0.75};
    }
    case Problem::Tricrown:
      return {0.25, 0.25, 0.5};
    case Problem::ThreeCircles: {
      const double each = kPi * std::pow(geometry::three_circles_radius(), 2) / 4.0;
      return {each, each, each, 1.0 - 3.0 * each};
    }
    case Problem::Squares:
      return {0.25, 0.25, 0.25, 0.25};
    case Problem::NonConvex: {
      const double below = simpson([](double x1) { return std::clamp(non_convex_frontier(x1), -1.0, 1.0) + 1.0; },
                                   kIntervals) / 4.0;
      return {below, 1.0 - below};
    }
    case Problem::WavyLines: {
      auto band = [](double x1, int which) {
        double lo, hi;
        wavy_curves(x1, lo, hi);
        lo = std::clamp(lo, -1.0, 1.0);
        hi = std::clamp(hi, -1.0, 1.0);
        switch (which) {
          case 0: return lo + 1.0;
          case 1: return x1 > 0.0 ? hi - lo : 0.0;
          case 2: return x1 > 0.0 ? 0.0 : hi - lo;
          default: return 1.0 - hi;
        }
      };
      std::vector<double> out(4);
      for (int c = 0; c < 4; ++c) {
        // Classes 1 and 2 switch at x1 = 0; integrate each half separately.
        auto f = [&](double x1) { return band(x1, c); };
        out[c] = (simpson_range(f, -1.0, 0.0, kIntervals) + simpson_range(f, 0.0, 1.0, kIntervals)) / 4.0;
      }
      return out;
    }
  }
  throw InvalidArgument("unknown problem");
}

void write_dataset_csv(std::ostream& out, const Dataset& data) {
  const std::size_t dim = problem_dim(data.problem);
  for (std::size_t j = 0; j < dim; ++j) out << 'x' << (j + 1) << ',';
  out << "class\n";
  char buf[40];
  for (const Sample& s : data.samples) {
    for (double v : s.x) {
      std::snprintf(buf, sizeof buf, "%.17g,", v);
      out << buf;
    }
    out << s.c << '\n';
  }
}

Dataset read_dataset_csv(std::istream& in, Problem problem) {
  const std::size_t dim = problem_dim(problem);
  const std::size_t classes = problem_classes(problem);
  Dataset data;
  data.problem = problem;
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("dataset file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::string header;
  for (std::size_t j = 1; j <= dim; ++j) header += "x" + std::to_string(j) + ",";
  if (line != header + "class") throw InvalidArgument("dataset header must be '" + header + "class'");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != dim + 1)
      throw InvalidArgument("dataset line " + std::to_string(lineno) + ": expected " + std::to_string(dim + 1) +
                            " fields");
    Sample s;
    s.x.resize(dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const auto& t = fields[j];
      auto r = std::from_chars(t.data(), t.data() + t.size(), s.x[j]);
      if (r.ec != std::errc{} || r.ptr != t.data() + t.size())
        throw InvalidArgument("dataset line " + std::to_string(lineno) + ": malformed coordinate");
      if (!(s.x[j] >= -1.0 && s.x[j] <= 1.0))
        throw InvalidArgument("dataset line " + std::to_string(lineno) + ": coordinate outside [-1, 1]");
    }
    const auto& t = fields[dim];
    auto r = std::from_chars(t.data(), t.data() + t.size(), s.c);
    if (r.ec != std::errc{} || r.ptr != t.data() + t.size() || s.c >= classes)
      throw InvalidArgument("dataset line " + std::to_string(lineno) + ": invalid class");
    data.samples.push_back(std::move(s));
  }
  return data;
}

}  // namespace reupload
