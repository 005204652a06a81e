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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "reupload/qubit.hpp"

namespace reupload {

/// Layer encodings.
///   A: Rz(phi) Ry(w.x + alpha), any feature dimension.
///   B: Rz(omega*x2 + beta) Ry(nu*x1 + alpha), two features only.
enum class Ansatz { A, B };

std::string_view to_string(Ansatz a);
Ansatz parse_ansatz(std::string_view s);

struct LayerA {
  std::vector<double> weights;
  double alpha = 0.0;
  double phi = 0.0;
};

struct LayerB {
  double nu = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
  double beta = 0.0;
};

using LayerParams = std::variant<LayerA, LayerB>;

/// Free parameters per layer: d + 2 for A, 4 for B.
std::size_t params_per_layer(Ansatz ansatz, std::size_t dim);

/// Trainable parameters for all layers, stored flat in canonical order:
/// layer-major, then (w_1..w_d, alpha, phi) for A or (nu, alpha, omega, beta)
/// for B.
class ParameterSet {
 public:
  ParameterSet(Ansatz ansatz, std::size_t dim, std::size_t layers, std::vector<double> flat);

  static ParameterSet zeros(Ansatz ansatz, std::size_t dim, std::size_t layers);
  static ParameterSet from_layers(Ansatz ansatz, std::size_t dim, const std::vector<LayerParams>& layers);

  Ansatz ansatz() const { return ansatz_; }
  std::size_t dim() const { return dim_; }
  std::size_t layers() const { return layers_; }
  std::size_t per_layer() const { return params_per_layer(ansatz_, dim_); }
  std::size_t size() const { return flat_.size(); }

  std::span<const double> flat() const { return flat_; }
  double& operator[](std::size_t i) { return flat_[i]; }
  double operator[](std::size_t i) const { return flat_[i]; }

  LayerParams layer(std::size_t i) const;
  void set_layer(std::size_t i, const LayerParams& p);

  /// Data-dependent Ry and Rz angles of layer i.
  double ry_angle(std::size_t i, std::span<const double> x) const;
  double rz_angle(std::size_t i, std::span<const double> x) const;

  /// Copy with the flat vector replaced; sizes must agree.
  ParameterSet with_flat(std::span<const double> flat) const;

  bool operator==(const ParameterSet&) const = default;

 private:
  Ansatz ansatz_;
  std::size_t dim_;
  std::size_t layers_;
  std::vector<double> flat_;
};

/// Rz(...) * Ry(...) for one layer (Ry acts first).
Unitary layer_unitary(Ansatz ansatz, const LayerParams& theta, std::span<const double> x);

/// prod_{i=L..1} U(x, theta_i) |0>, layer 1 acting first.
QubitState circuit_state(const ParameterSet& theta, std::span<const double> x);

/// V_c = Rz(eta) Ry(lambda).
struct LabelGate {
  double lambda = 0.0;
  double eta = 0.0;
};

struct LabelStateSet {
  std::size_t k = 0;
  std::vector<LabelGate> gates;
  std::vector<QubitState> states;
};

/// Maximally separated label states for k in {2, 3, 4}: poles, a great-circle
/// triangle, and a regular tetrahedron on the Bloch sphere.
LabelStateSet label_states(std::size_t k);

/// Compiled circuit: one arbitrary-axis pulse per layer plus the inverse label
/// gate, L + 1 pulses in total.
struct FusedSequence {
  std::vector<RotationParams> pulses;
  std::vector<double> x;
  std::shared_ptr<const ParameterSet> theta;
  std::size_t label = 0;
};

/// Appends the L + 1 fused pulses for (theta, x) followed by V^dagger to `out`
/// (cleared first). Hot-path variant of fuse().
void fuse_into(const ParameterSet& theta, std::span<const double> x, const LabelGate& label,
               std::vector<RotationParams>& out);

/// Pulse n (n >= 2) carries azimuth pi/2 - sum_{i<n} rz_i: each Rz is
/// realized as a frame shift of every later pulse. The final pulse realizes
/// Ry(-lambda) with the residual frame and -eta folded into its azimuth, so
/// the |0> probability after the sequence equals |<phi_c|psi>|^2.
FusedSequence fuse(const ParameterSet& theta, std::span<const double> x, std::size_t c,
                   const LabelStateSet& labels);

/// Anything that can run a pulse sequence from |0> and report the probability
/// of measuring |0>. `stream` keys any randomness the executor consumes.
class Executor {
 public:
  virtual ~Executor() = default;
  virtual double p0(std::span<const RotationParams> pulses, std::uint64_t stream) const = 0;
  /// True when p0() is exact and deterministic.
  virtual bool exact() const = 0;
  /// Copy of this executor measuring with `shots` repetitions (ignored when
  /// exact).
  virtual std::unique_ptr<Executor> with_shots(int shots) const = 0;
};

class ExactExecutor final : public Executor {
 public:
  double p0(std::span<const RotationParams> pulses, std::uint64_t stream) const override;
  bool exact() const override { return true; }
  std::unique_ptr<Executor> with_shots(int) const override { return std::make_unique<ExactExecutor>(); }
};

/// Applies the pulses exactly to |0>.
QubitState run_pulses(std::span<const RotationParams> pulses);

/// P0 of V_c^dagger U(x, Theta), as reported by `executor`.
double measured_fidelity(const FusedSequence& seq, const Executor& executor, std::uint64_t stream = 0);

/// Text form: one `gamma,delta` line per pulse, 17 significant digits.
/// Lines starting with '#' are ignored on read.
void write_sequence(std::ostream& out, std::span<const RotationParams> pulses);
std::vector<RotationParams> read_sequence(std::istream& in);

}  // namespace reupload
