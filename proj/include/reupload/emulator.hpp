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
#include <utility>

#include "reupload/circuit.hpp"
#include "reupload/rng.hpp"

namespace reupload {

/// Drive parameters of the ion. Frequencies are angular (rad/s).
struct HardwareProfile {
  double rabi_frequency = 2.0 * 3.14159265358979323846 * 40e3;
  double pi_time = 12e-6;          // reference pi-time at the fast setting
  double coherence_time = 5e-3;    // T2

  void validate() const;
  bool operator==(const HardwareProfile&) const = default;
};

/// Noise magnitudes. `detuning_sigma` is in Hz (converted to rad/s when
/// drawn); timing jitter in seconds; phases in radians.
struct NoiseConfig {
  double detuning_sigma = 0.0;
  double phase_jitter_sigma = 0.0;
  double timing_jitter = 0.0;
  double intensity_rel_sigma = 0.0;
  double collision_prob_per_shot = 0.0;
  int shots = 100;
  double systematic_delta_offset = 0.0;
  double systematic_gamma_offset = 0.0;

  void validate() const;
  /// Any per-shot or per-pulse randomness beyond shot sampling.
  bool stochastic() const;
  bool operator==(const NoiseConfig&) const = default;
};

struct PhysicalPulse {
  double laser_phase = 0.0;  // rad
  double t_op = 0.0;         // s
  double detuning = 0.0;     // rad/s
};

/// Slow drift, redrawn once per shot.
struct ShotDrift {
  double detuning = 0.0;       // rad/s
  double intensity_rel = 0.0;  // relative Rabi-frequency error
};

struct ShotOutcome {
  double p0_estimate = 0.0;
  int shots_used = 0;
  int collisions = 0;
  int zeros = 0;  // |0> outcomes; p0_estimate = zeros / shots_used
};

/// Nominal resonant pulse: t_op = delta / Omega0 with negative delta realized
/// as delta + 2 pi; the azimuth is carried by the laser phase.
PhysicalPulse physical_pulse(RotationParams p, const HardwareProfile& hw);

ShotDrift draw_shot_drift(const NoiseConfig& noise, CounterRng& rng);

/// Effective rotation for one pulse under `drift` plus per-pulse phase and
/// timing jitter drawn from `rng`:
///   delta' = sqrt(Omega0^2 (1 + eps)^2 + Delta^2) (t_op + tau) + delta_offset
///   gamma' = gamma + Delta (t_op + tau) + phi_j + gamma_offset
RotationParams perturb_pulse(const PhysicalPulse& nominal, const HardwareProfile& hw, const NoiseConfig& noise,
                             const ShotDrift& drift, CounterRng& rng);

/// Finite-shot execution. Shot s uses the Philox substream (stream_key, s),
/// so results do not depend on evaluation order.
ShotOutcome noisy_execute(std::span<const RotationParams> pulses, const HardwareProfile& hw,
                          const NoiseConfig& noise, std::uint64_t stream_key);

/// Default profile and noise tuned against the exact simulator (see
/// tools/calibrate_noise.cpp).
std::pair<HardwareProfile, NoiseConfig> calibrated_default();

/// Executor adapter; p0() returns the shot estimate.
class EmulatorExecutor final : public Executor {
 public:
  EmulatorExecutor(HardwareProfile hw, NoiseConfig noise);
  double p0(std::span<const RotationParams> pulses, std::uint64_t stream) const override;
  bool exact() const override { return false; }
  std::unique_ptr<Executor> with_shots(int shots) const override;

  const HardwareProfile& hardware() const { return hw_; }
  const NoiseConfig& noise() const { return noise_; }

 private:
  HardwareProfile hw_;
  NoiseConfig noise_;
};

/// key=value profile files. Unknown keys are rejected; missing keys keep
/// their defaults. Hardware and noise keys may share one file.
void load_profiles(std::istream& in, HardwareProfile& hw, NoiseConfig& noise);
void save_profiles(std::ostream& out, const HardwareProfile& hw, const NoiseConfig& noise);

std::string shot_outcome_json(const ShotOutcome& o);

}  // namespace reupload
