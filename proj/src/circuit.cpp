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

#include "reupload/circuit.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>

#include "reupload/errors.hpp"

namespace reupload {

namespace {

constexpr double kPi = std::numbers::pi;

void require_finite_all(std::span<const double> v, const char* what) {
  for (double d : v)
    if (!std::isfinite(d)) throw InvalidArgument(std::string(what) + " contains a non-finite value");
}

}  // namespace

std::string_view to_string(Ansatz a) { return a == Ansatz::A ? "A" : "B"; }

Ansatz parse_ansatz(std::string_view s) {
  if (s == "A" || s == "a") return Ansatz::A;
  if (s == "B" || s == "b") return Ansatz::B;
  throw InvalidArgument("unknown ansatz '" + std::string(s) + "'");
}

std::size_t params_per_layer(Ansatz ansatz, std::size_t dim) {
  return ansatz == Ansatz::A ? dim + 2 : 4;
}

ParameterSet::ParameterSet(Ansatz ansatz, std::size_t dim, std::size_t layers, std::vector<double> flat)
    : ansatz_(ansatz), dim_(dim), layers_(layers), flat_(std::move(flat)) {
  if (dim == 0) throw InvalidArgument("feature dimension must be positive");
  if (ansatz == Ansatz::B && dim != 2) throw InvalidArgument("ansatz B requires exactly 2 features");
  if (flat_.size() != layers * params_per_layer(ansatz, dim))
    throw InvalidArgument("parameter count does not match ansatz, dim and layers");
  require_finite_all(flat_, "parameter set");
}

ParameterSet ParameterSet::zeros(Ansatz ansatz, std::size_t dim, std::size_t layers) {
  return ParameterSet(ansatz, dim, layers, std::vector<double>(layers * params_per_layer(ansatz, dim), 0.0));
}

ParameterSet ParameterSet::from_layers(Ansatz ansatz, std::size_t dim, const std::vector<LayerParams>& layers) {
  ParameterSet out = zeros(ansatz, dim, layers.size());
  for (std::size_t i = 0; i < layers.size(); ++i) out.set_layer(i, layers[i]);
  return out;
}

LayerParams ParameterSet::layer(std::size_t i) const {
  if (i >= layers_) throw InvalidArgument("layer index out of range");
  const double* p = flat_.data() + i * per_layer();
  if (ansatz_ == Ansatz::A) {
    LayerA l;
    l.weights.assign(p, p + dim_);
    l.alpha = p[dim_];
    l.phi = p[dim_ + 1];
    return l;
  }
  return LayerB{p[0], p[1], p[2], p[3]};
}

void ParameterSet::set_layer(std::size_t i, const LayerParams& lp) {
  if (i >= layers_) throw InvalidArgument("layer index out of range");
  double* p = flat_.data() + i * per_layer();
  if (ansatz_ == Ansatz::A) {
    const auto* l = std::get_if<LayerA>(&lp);
    if (l == nullptr) throw InvalidArgument("expected an ansatz A layer");
    if (l->weights.size() != dim_) throw InvalidArgument("layer weight count does not match dim");
    std::copy(l->weights.begin(), l->weights.end(), p);
    p[dim_] = l->alpha;
    p[dim_ + 1] = l->phi;
  } else {
    const auto* l = std::get_if<LayerB>(&lp);
    if (l == nullptr) throw InvalidArgument("expected an ansatz B layer");
    p[0] = l->nu;
    p[1] = l->alpha;
    p[2] = l->omega;
    p[3] = l->beta;
  }
  require_finite_all({p, per_layer()}, "layer");
}

double ParameterSet::ry_angle(std::size_t i, std::span<const double> x) const {
  const double* p = flat_.data() + i * per_layer();
  if (ansatz_ == Ansatz::A) {
    double a = p[dim_];
    for (std::size_t j = 0; j < dim_; ++j) a += p[j] * x[j];
    return a;
  }
  return p[0] * x[0] + p[1];
}

double ParameterSet::rz_angle(std::size_t i, std::span<const double> x) const {
  const double* p = flat_.data() + i * per_layer();
  if (ansatz_ == Ansatz::A) return p[dim_ + 1];
  return p[2] * x[1] + p[3];
}

ParameterSet ParameterSet::with_flat(std::span<const double> flat) const {
  return ParameterSet(ansatz_, dim_, layers_, std::vector<double>(flat.begin(), flat.end()));
}

Unitary layer_unitary(Ansatz ansatz, const LayerParams& theta, std::span<const double> x) {
  if (ansatz == Ansatz::A) {
    const auto* l = std::get_if<LayerA>(&theta);
    if (l == nullptr) throw InvalidArgument("expected an ansatz A layer");
    if (l->weights.size() != x.size()) throw InvalidArgument("feature dimension does not match layer weights");
    double a = l->alpha;
    for (std::size_t j = 0; j < x.size(); ++j) a += l->weights[j] * x[j];
    return rz(l->phi) * ry(a);
  }
  const auto* l = std::get_if<LayerB>(&theta);
  if (l == nullptr) throw InvalidArgument("expected an ansatz B layer");
  if (x.size() != 2) throw InvalidArgument("ansatz B requires exactly 2 features");
  return rz(l->omega * x[1] + l->beta) * ry(l->nu * x[0] + l->alpha);
}

QubitState circuit_state(const ParameterSet& theta, std::span<const double> x) {
  if (x.size() != theta.dim()) throw InvalidArgument("feature dimension does not match parameter set");
  require_finite_all(x, "feature vector");
  QubitState s = QubitState::zero();
  for (std::size_t i = 0; i < theta.layers(); ++i)
    s = apply(rz(theta.rz_angle(i, x)) * ry(theta.ry_angle(i, x)), s);
  return s;
}

LabelStateSet label_states(std::size_t k) {
  LabelStateSet out;
  out.k = k;
  switch (k) {
    case 2:
      out.gates = {{0.0, 0.0}, {kPi, 0.0}};
      break;
    case 3:
      out.gates = {{0.0, 0.0}, {2.0 * kPi / 3.0, 0.0}, {4.0 * kPi / 3.0, 0.0}};
      break;
    case 4: {
      const double tetra = std::acos(-1.0 / 3.0);
      out.gates = {{0.0, 0.0}, {tetra, 0.0}, {tetra, 2.0 * kPi / 3.0}, {tetra, 4.0 * kPi / 3.0}};
      break;
    }
    default:
      throw InvalidArgument("label states are defined for 2, 3 or 4 classes");
  }
  for (const LabelGate& g : out.gates) out.states.push_back(apply(rz(g.eta) * ry(g.lambda), QubitState::zero()));
  return out;
}

void fuse_into(const ParameterSet& theta, std::span<const double> x, const LabelGate& label,
               std::vector<RotationParams>& out) {
  out.clear();
  double azimuth = kPi / 2;
  for (std::size_t i = 0; i < theta.layers(); ++i) {
    out.push_back({azimuth, theta.ry_angle(i, x)});
    azimuth -= theta.rz_angle(i, x);
  }
  // Rz(-eta) joins the frame; Ry(-lambda) at azimuth g is R(g + pi, lambda).
  azimuth += label.eta;
  out.push_back({azimuth + kPi, label.lambda});
}

FusedSequence fuse(const ParameterSet& theta, std::span<const double> x, std::size_t c,
                   const LabelStateSet& labels) {
  if (x.size() != theta.dim()) throw InvalidArgument("feature dimension does not match parameter set");
  if (c >= labels.k || c >= labels.gates.size()) throw InvalidArgument("class index exceeds label count");
  require_finite_all(x, "feature vector");
  FusedSequence seq;
  fuse_into(theta, x, labels.gates[c], seq.pulses);
  seq.x.assign(x.begin(), x.end());
  seq.theta = std::make_shared<const ParameterSet>(theta);
  seq.label = c;
  return seq;
}

QubitState run_pulses(std::span<const RotationParams> pulses) {
  QubitState s = QubitState::zero();
  for (const RotationParams& p : pulses) s = apply(arb_rotation(p), s);
  return s;
}

double ExactExecutor::p0(std::span<const RotationParams> pulses, std::uint64_t) const {
  return std::min(1.0, run_pulses(pulses).p0());
}

double measured_fidelity(const FusedSequence& seq, const Executor& executor, std::uint64_t stream) {
  return executor.p0(seq.pulses, stream);
}

void write_sequence(std::ostream& out, std::span<const RotationParams> pulses) {
  char buf[64];
  for (const RotationParams& p : pulses) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.gamma, p.delta);
    out << buf;
  }
}

std::vector<RotationParams> read_sequence(std::istream& in) {
  std::vector<RotationParams> pulses;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw InvalidArgument("pulse line " + std::to_string(lineno) + ": expected 'gamma,delta'");
    RotationParams p;
    const char* begin = line.data();
    const char* end = begin + line.size();
    auto r1 = std::from_chars(begin, begin + comma, p.gamma);
    auto r2 = std::from_chars(begin + comma + 1, end, p.delta);
    if (r1.ec != std::errc{} || r1.ptr != begin + comma || r2.ec != std::errc{} || r2.ptr != end ||
        !std::isfinite(p.gamma) || !std::isfinite(p.delta))
      throw InvalidArgument("pulse line " + std::to_string(lineno) + ": malformed number");
    pulses.push_back(p);
  }
  return pulses;
}

}  // namespace reupload
