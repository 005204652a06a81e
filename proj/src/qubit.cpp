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

#include "reupload/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "reupload/errors.hpp"

namespace reupload {

namespace {

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be finite");
}

}  // namespace

Unitary Unitary::operator*(const Unitary& r) const {
  return {{m[0] * r.m[0] + m[1] * r.m[2], m[0] * r.m[1] + m[1] * r.m[3],
           m[2] * r.m[0] + m[3] * r.m[2], m[2] * r.m[1] + m[3] * r.m[3]}};
}

Unitary Unitary::adjoint() const {
  return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

Unitary Unitary::scaled(Complex f) const { return {{f * m[0], f * m[1], f * m[2], f * m[3]}}; }

Unitary arb_rotation(RotationParams p) {
  require_finite(p.gamma, "gamma");
  require_finite(p.delta, "delta");
  const double c = std::cos(0.5 * p.delta);
  const double s = std::sin(0.5 * p.delta);
  const double cg = std::cos(p.gamma);
  const double sg = std::sin(p.gamma);
  // -i e^{-ig} s = -s sin g - i s cos g ; -i e^{ig} s = s sin g - i s cos g
  return {{Complex{c, 0.0}, Complex{-s * sg, -s * cg}, Complex{s * sg, -s * cg}, Complex{c, 0.0}}};
}

Unitary rz(double theta) {
  require_finite(theta, "theta");
  const Complex lo = std::polar(1.0, -0.5 * theta);
  return {{lo, Complex{0.0}, Complex{0.0}, std::conj(lo)}};
}

Unitary ry(double theta) {
  require_finite(theta, "theta");
  return arb_rotation({std::numbers::pi / 2, theta});
}

Unitary rx(double theta) {
  require_finite(theta, "theta");
  return arb_rotation({0.0, theta});
}

QubitState apply(const Unitary& u, const QubitState& s) {
  return {u.m[0] * s.amp0 + u.m[1] * s.amp1, u.m[2] * s.amp0 + u.m[3] * s.amp1};
}

double overlap_prob(const QubitState& a, const QubitState& b) {
  const Complex inner = std::conj(a.amp0) * b.amp0 + std::conj(a.amp1) * b.amp1;
  return std::clamp(std::norm(inner), 0.0, 1.0);
}

double unitarity_error(const Unitary& u) {
  const Unitary p = u.adjoint() * u;
  return max_abs_diff(p, Unitary::identity());
}

double max_abs_diff(const Unitary& a, const Unitary& b) {
  double worst = 0.0;
  for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(a.m[i] - b.m[i]));
  return worst;
}

}  // namespace reupload
