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

#include <array>
#include <complex>

namespace reupload {

using Complex = std::complex<double>;

/// Pure single-qubit state a|0> + b|1>.
struct QubitState {
  Complex amp0{1.0, 0.0};
  Complex amp1{0.0, 0.0};

  static QubitState zero() { return {}; }
  static QubitState one() { return {Complex{0.0, 0.0}, Complex{1.0, 0.0}}; }

  double norm_sq() const { return std::norm(amp0) + std::norm(amp1); }
  /// Probability of reading |0> in the computational basis.
  double p0() const { return std::norm(amp0); }
};

/// 2x2 complex matrix, row-major: {m00, m01, m10, m11}.
struct Unitary {
  std::array<Complex, 4> m{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};

  static Unitary identity() { return {}; }

  Complex operator()(int row, int col) const { return m[2 * row + col]; }
  Unitary operator*(const Unitary& rhs) const;
  Unitary adjoint() const;
  Unitary scaled(Complex factor) const;
};

/// Axis azimuth `gamma` in the xy-plane and rotation angle `delta`, radians.
/// Angles are kept unreduced.
struct RotationParams {
  double gamma = 0.0;
  double delta = 0.0;

  bool operator==(const RotationParams&) const = default;
};

/// Rotation by delta around the equatorial axis at azimuth gamma:
///   [[cos(d/2), -i e^{-ig} sin(d/2)], [-i e^{ig} sin(d/2), cos(d/2)]]
Unitary arb_rotation(RotationParams p);

/// diag(e^{-i t/2}, e^{i t/2}); with this sign arb_rotation(g, d) equals
/// rz(g) * rx(d) * rz(-g) exactly.
Unitary rz(double theta);
/// arb_rotation(pi/2, theta).
Unitary ry(double theta);
/// arb_rotation(0, theta).
Unitary rx(double theta);

QubitState apply(const Unitary& u, const QubitState& s);

/// |<a|b>|^2 clamped to [0, 1].
double overlap_prob(const QubitState& a, const QubitState& b);

/// max entrywise |U^dagger U - I|.
double unitarity_error(const Unitary& u);

/// max entrywise |a - b|.
double max_abs_diff(const Unitary& a, const Unitary& b);

}  // namespace reupload
