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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "reupload/datasets.hpp"
#include "reupload/errors.hpp"

namespace reupload {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Problems, ShapeTable) {
  const std::pair<std::size_t, std::size_t> expected[] = {{2, 2}, {2, 2}, {2, 2}, {3, 2}, {4, 2},
                                                          {2, 3}, {2, 4}, {2, 4}, {2, 4}};
  std::size_t i = 0;
  for (Problem p : kAllProblems) {
    EXPECT_EQ(problem_dim(p), expected[i].first) << to_string(p);
    EXPECT_EQ(problem_classes(p), expected[i].second) << to_string(p);
    EXPECT_EQ(parse_problem(to_string(p)), p);
    ++i;
  }
  EXPECT_THROW(parse_problem("donut"), InvalidArgument);
}

TEST(Geometry, HalfSpaceRadii) {
  EXPECT_NEAR(kPi * std::pow(geometry::circle_radius(), 2), 2.0, 1e-12);
  EXPECT_NEAR(4.0 / 3.0 * kPi * std::pow(geometry::sphere_radius(), 3), 4.0, 1e-12);
  EXPECT_NEAR(kPi * kPi / 2.0 * std::pow(geometry::hypersphere_radius(), 4), 8.0, 1e-12);
  EXPECT_NEAR(geometry::hypersphere_radius(), 1.1284, 1e-4);
  EXPECT_GT(geometry::hypersphere_radius(), 1.0);
}

TEST(LabelPoint, CircleExamples) {
  EXPECT_EQ(label_point(Problem::Circle, std::vector<double>{0.0, 0.0}), 0u);
  EXPECT_EQ(label_point(Problem::Circle, std::vector<double>{1.0, 1.0}), 1u);
  const double r = geometry::circle_radius();
  EXPECT_EQ(label_point(Problem::Circle, std::vector<double>{r, 0.0}), 0u);
}

TEST(LabelPoint, OtherGeometries) {
  EXPECT_EQ(label_point(Problem::Crown, std::vector<double>{0.0, 0.0}), 1u);
  EXPECT_EQ(label_point(Problem::Crown, std::vector<double>{0.7, 0.0}), 0u);
  EXPECT_EQ(label_point(Problem::Crown, std::vector<double>{0.9, 0.9}), 1u);
  EXPECT_EQ(label_point(Problem::Tricrown, std::vector<double>{0.0, 0.0}), 0u);
  EXPECT_EQ(label_point(Problem::Tricrown, std::vector<double>{0.0, 0.7}), 1u);
  EXPECT_EQ(label_point(Problem::Tricrown, std::vector<double>{-0.9, 0.9}), 2u);
  EXPECT_EQ(label_point(Problem::NonConvex, std::vector<double>{-0.5, -0.9}), 0u);
  EXPECT_EQ(label_point(Problem::NonConvex, std::vector<double>{0.5, 0.9}), 1u);
  EXPECT_EQ(label_point(Problem::ThreeCircles, std::vector<double>{-0.5, -0.5}), 0u);
  EXPECT_EQ(label_point(Problem::ThreeCircles, std::vector<double>{0.5, 0.5}), 1u);
  EXPECT_EQ(label_point(Problem::ThreeCircles, std::vector<double>{-0.5, 0.5}), 2u);
  EXPECT_EQ(label_point(Problem::ThreeCircles, std::vector<double>{0.5, -0.5}), 3u);
  EXPECT_EQ(label_point(Problem::Squares, std::vector<double>{-0.5, -0.5}), 0u);
  EXPECT_EQ(label_point(Problem::Squares, std::vector<double>{0.5, -0.5}), 1u);
  EXPECT_EQ(label_point(Problem::Squares, std::vector<double>{-0.5, 0.5}), 2u);
  EXPECT_EQ(label_point(Problem::Squares, std::vector<double>{0.5, 0.5}), 3u);
  // Curves sin(pi x1) +- x1 at x1 = 0.5 sit at 1.5 and 0.5.
  EXPECT_EQ(label_point(Problem::WavyLines, std::vector<double>{0.5, 0.0}), 0u);
  EXPECT_EQ(label_point(Problem::WavyLines, std::vector<double>{0.5, 1.0}), 1u);
  EXPECT_EQ(label_point(Problem::WavyLines, std::vector<double>{-0.5, 0.0}), 3u);
  EXPECT_EQ(label_point(Problem::WavyLines, std::vector<double>{-0.5, -0.9}), 2u);
  EXPECT_EQ(label_point(Problem::Sphere, std::vector<double>{0.5, 0.5, 0.5}), 0u);
  EXPECT_EQ(label_point(Problem::Sphere, std::vector<double>{0.9, 0.9, 0.0}), 1u);
  EXPECT_EQ(label_point(Problem::Hypersphere, std::vector<double>{1.0, 0.0, 0.0, 0.0}), 0u);
  EXPECT_EQ(label_point(Problem::Hypersphere, std::vector<double>{1.0, 1.0, 0.0, 0.0}), 1u);
}

TEST(LabelPoint, RejectsBadInput) {
  EXPECT_THROW(label_point(Problem::Circle, std::vector<double>{1.5, 0.0}), InvalidArgument);
  EXPECT_THROW(label_point(Problem::Circle, std::vector<double>{0.0}), InvalidArgument);
  EXPECT_THROW(label_point(Problem::Circle, std::vector<double>{NAN, 0.0}), InvalidArgument);
}

TEST(SampleDataset, ShapeRangeAndLabels) {
  for (Problem p : kAllProblems) {
    const Dataset d = sample_dataset(p, 200, 4);
    ASSERT_EQ(d.size(), 200u);
    for (const Sample& s : d.samples) {
      ASSERT_EQ(s.x.size(), problem_dim(p));
      for (double v : s.x) {
        ASSERT_GE(v, -1.0);
        ASSERT_LE(v, 1.0);
      }
      ASSERT_EQ(label_point(p, s.x), s.c);
    }
  }
}

TEST(SampleDataset, Deterministic) {
  const Dataset a = sample_dataset(Problem::WavyLines, 500, 77);
  const Dataset b = sample_dataset(Problem::WavyLines, 500, 77);
  std::ostringstream ca, cb;
  write_dataset_csv(ca, a);
  write_dataset_csv(cb, b);
  EXPECT_EQ(ca.str(), cb.str());
  std::ostringstream cc;
  write_dataset_csv(cc, sample_dataset(Problem::WavyLines, 500, 78));
  EXPECT_NE(ca.str(), cc.str());
}

TEST(SampleDataset, PrefixStable) {
  const Dataset small = sample_dataset(Problem::Sphere, 10, 5);
  const Dataset large = sample_dataset(Problem::Sphere, 100, 5);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(small.samples[i].x, large.samples[i].x);
}

TEST(ClassBalance, ClosedForms) {
  auto expect = [](Problem p, std::vector<double> want) {
    const auto got = class_balance(p);
    ASSERT_EQ(got.size(), want.size()) << to_string(p);
    for (std::size_t c = 0; c < want.size(); ++c) EXPECT_NEAR(got[c], want[c], 1e-12) << to_string(p) << c;
  };
  expect(Problem::Circle, {0.5, 0.5});
  expect(Problem::Sphere, {0.5, 0.5});
  expect(Problem::Crown, {0.25, 0.75});
  expect(Problem::Tricrown, {0.25, 0.25, 0.5});
  expect(Problem::ThreeCircles, {0.125, 0.125, 0.125, 0.625});
  expect(Problem::Squares, {0.25, 0.25, 0.25, 0.25});
}

TEST(ClassBalance, SumsToOne) {
  for (Problem p : kAllProblems) {
    double s = 0.0;
    for (double v : class_balance(p)) s += v;
    EXPECT_NEAR(s, 1.0, 1e-9) << to_string(p);
  }
}

TEST(ClassBalance, NonConvexAgainstMidpointRule) {
  // Class 0 lies below a single curve: fraction = mean over x1 of the clipped height.
  const int n = 400000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + (i + 0.5) * 2.0 / n;
    const double y = -x + 0.5 * std::sin(kPi * x) + 0.3 * std::sin(3 * kPi * x);
    sum += std::clamp((y + 1.0) / 2.0, 0.0, 1.0);
  }
  EXPECT_NEAR(class_balance(Problem::NonConvex)[0], sum / n, 1e-4);
}

TEST(ClassBalance, WavyLinesAgainstMidpointRule) {
  const int n = 400000;
  std::vector<double> f(4, 0.0);
  for (int i = 0; i < n; ++i) {
    const double x = -1.0 + (i + 0.5) * 2.0 / n;
    const double lo = std::clamp(std::sin(kPi * x) - std::abs(x), -1.0, 1.0);
    const double hi = std::clamp(std::sin(kPi * x) + std::abs(x), -1.0, 1.0);
    f[0] += (lo + 1.0) / 2.0;
    f[3] += (1.0 - hi) / 2.0;
    f[x > 0 ? 1 : 2] += (hi - lo) / 2.0;
  }
  const auto got = class_balance(Problem::WavyLines);
  for (int c = 0; c < 4; ++c) EXPECT_NEAR(got[c], f[c] / n, 1e-4) << c;
}

TEST(ClassBalance, HypersphereClippedBall) {
  // Midpoint rule over three coordinates; the fourth is integrated exactly.
  const double r2 = std::pow(geometry::hypersphere_radius(), 2);
  const int n = 160;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = -1.0 + (i + 0.5) * 2.0 / n;
    for (int j = 0; j < n; ++j) {
      const double b = -1.0 + (j + 0.5) * 2.0 / n;
      for (int k = 0; k < n; ++k) {
        const double c = -1.0 + (k + 0.5) * 2.0 / n;
        const double rest = r2 - a * a - b * b - c * c;
        if (rest > 0.0) sum += std::min(1.0, std::sqrt(rest));
      }
    }
  }
  const double oracle = sum / (static_cast<double>(n) * n * n);
  const auto got = class_balance(Problem::Hypersphere);
  EXPECT_LT(got[0], 0.5);
  EXPECT_NEAR(got[0], oracle, 5e-4);
}

TEST(ClassBalance, MonteCarloWithinThreeSigma) {
  const std::size_t n = 100000;
  for (Problem p : kAllProblems) {
    const Dataset d = sample_dataset(p, n, 1);
    std::vector<double> counts(problem_classes(p), 0.0);
    for (const Sample& s : d.samples) counts[s.c] += 1.0;
    const auto exact = class_balance(p);
    for (std::size_t c = 0; c < counts.size(); ++c) {
      const double sigma = std::sqrt(exact[c] * (1.0 - exact[c]) / n);
      EXPECT_NEAR(counts[c] / n, exact[c], 3.0 * sigma) << to_string(p) << " class " << c;
    }
  }
}

// Over many seeds the standardized quadrant deviations should look N(0, 1).
TEST(ClassBalance, QuadrantDeviationsAreStandardNormal) {
  const std::size_t n = 20000;
  const int seeds = 100;
  double sum = 0.0, sum_sq = 0.0;
  for (int seed = 0; seed < seeds; ++seed) {
    const Dataset d = sample_dataset(Problem::Squares, n, 5000 + seed);
    double inner = 0.0;
    for (const Sample& s : d.samples) inner += s.c == 0;
    const double z = (inner / n - 0.25) / std::sqrt(0.25 * 0.75 / n);
    sum += z;
    sum_sq += z * z;
  }
  const double mean = sum / seeds;
  const double var = sum_sq / seeds - mean * mean;
  EXPECT_NEAR(mean, 0.0, 3.0 / std::sqrt(double(seeds)));
  EXPECT_NEAR(var, 1.0, 3.0 * std::sqrt(2.0 / seeds));
}

TEST(ClassBalance, CircleHalfWithinOnePercent) {
  const Dataset d = sample_dataset(Problem::Circle, 100000, 31337);
  double inner = 0.0;
  for (const Sample& s : d.samples) inner += s.c == 0;
  EXPECT_NEAR(inner / 100000.0, 0.5, 0.01);
}

TEST(DatasetCsv, RoundTrip) {
  const Dataset d = sample_dataset(Problem::Hypersphere, 50, 8);
  std::stringstream io;
  write_dataset_csv(io, d);
  EXPECT_EQ(io.str().substr(0, io.str().find('\n')), "x1,x2,x3,x4,class");
  const Dataset back = read_dataset_csv(io, Problem::Hypersphere);
  ASSERT_EQ(back.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    EXPECT_EQ(back.samples[i].x, d.samples[i].x);
    EXPECT_EQ(back.samples[i].c, d.samples[i].c);
  }
}

TEST(DatasetCsv, RejectsOutOfRange) {
  std::istringstream coord("x1,x2,class\n1.5,0,1\n");
  EXPECT_THROW(read_dataset_csv(coord, Problem::Circle), InvalidArgument);
  std::istringstream cls("x1,x2,class\n0.5,0,2\n");
  EXPECT_THROW(read_dataset_csv(cls, Problem::Circle), InvalidArgument);
  std::istringstream header("a,b,class\n0.5,0,1\n");
  EXPECT_THROW(read_dataset_csv(header, Problem::Circle), InvalidArgument);
  std::istringstream width("x1,x2,class\n0.5,1\n");
  EXPECT_THROW(read_dataset_csv(width, Problem::Circle), InvalidArgument);
}

}  // namespace
}  // namespace reupload
