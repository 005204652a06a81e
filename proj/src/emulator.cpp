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

#include "reupload/emulator.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>

#include <nlohmann/json.hpp>

#include "reupload/errors.hpp"
#include "reupload/keyvalue.hpp"

namespace reupload {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct DensityMatrix {
  double rho00;
  double rho11;
  Complex rho01;
};

// Pure dephasing: coherences shrink by `factor`, populations are kept.
DensityMatrix dephase(const QubitState& s, double factor) {
  return {std::norm(s.amp0), std::norm(s.amp1), s.amp0 * std::conj(s.amp1) * factor};
}

}  // namespace

void HardwareProfile::validate() const {
  if (!(rabi_frequency > 0.0) || !(pi_time > 0.0) || !(coherence_time > 0.0))
    throw InvalidArgument("hardware profile values must be positive");
}

void NoiseConfig::validate() const {
  for (double v : {detuning_sigma, phase_jitter_sigma, timing_jitter, intensity_rel_sigma, collision_prob_per_shot})
    if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("noise magnitudes must be finite and non-negative");
  if (collision_prob_per_shot > 1.0) throw InvalidArgument("collision_prob_per_shot must be <= 1");
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  if (!std::isfinite(systematic_delta_offset) || !std::isfinite(systematic_gamma_offset))
    throw InvalidArgument("systematic offsets must be finite");
}

bool NoiseConfig::stochastic() const {
  return detuning_sigma > 0.0 || phase_jitter_sigma > 0.0 || timing_jitter > 0.0 || intensity_rel_sigma > 0.0;
}

PhysicalPulse physical_pulse(RotationParams p, const HardwareProfile& hw) {
  double delta = p.delta;
  if (delta < 0.0) delta += kTwoPi * std::ceil(-delta / kTwoPi);
  return {p.gamma, delta / hw.rabi_frequency, 0.0};
}

ShotDrift draw_shot_drift(const NoiseConfig& noise, CounterRng& rng) {
  ShotDrift d;
  if (noise.detuning_sigma > 0.0) d.detuning = kTwoPi * noise.detuning_sigma * rng.normal();
  if (noise.intensity_rel_sigma > 0.0) d.intensity_rel = noise.intensity_rel_sigma * rng.normal();
  return d;
}

RotationParams perturb_pulse(const PhysicalPulse& nominal, const HardwareProfile& hw, const NoiseConfig& noise,
                             const ShotDrift& drift, CounterRng& rng) {
  const double phase = noise.phase_jitter_sigma > 0.0 ? noise.phase_jitter_sigma * rng.normal() : 0.0;
  const double tau = noise.timing_jitter > 0.0 ? noise.timing_jitter * rng.normal() : 0.0;
  const double t = nominal.t_op > 0.0 ? std::max(0.0, nominal.t_op + tau) : 0.0;
  const double delta_total = nominal.detuning + drift.detuning;
  const double rabi = hw.rabi_frequency * (1.0 + drift.intensity_rel);
  const double effective_rabi = std::sqrt(rabi * rabi + delta_total * delta_total);
  return {nominal.laser_phase + delta_total * t + phase + noise.systematic_gamma_offset,
          effective_rabi * t + noise.systematic_delta_offset};
}

ShotOutcome noisy_execute(std::span<const RotationParams> pulses, const HardwareProfile& hw,
                          const NoiseConfig& noise, std::uint64_t stream_key) {
  if (noise.shots < 1) throw InvalidArgument("shots must be >= 1");
  ShotOutcome out;
  out.shots_used = noise.shots;

  std::vector<PhysicalPulse> nominal;
  nominal.reserve(pulses.size());
  double t_total = 0.0;
  for (const RotationParams& p : pulses) {
    nominal.push_back(physical_pulse(p, hw));
    t_total += nominal.back().t_op;
  }
  const double coherence = std::exp(-t_total / hw.coherence_time);

  // Without per-shot noise every shot sees the same state.
  double fixed_p0 = -1.0;
  if (!noise.stochastic()) {
    CounterRng unused(stream_key);
    QubitState s = QubitState::zero();
    for (const PhysicalPulse& n : nominal) s = apply(arb_rotation(perturb_pulse(n, hw, noise, {}, unused)), s);
    fixed_p0 = s.p0();
  }

  for (int shot = 0; shot < noise.shots; ++shot) {
    CounterRng rng(stream_key, static_cast<std::uint64_t>(shot));
    if (noise.collision_prob_per_shot > 0.0 && rng.uniform() < noise.collision_prob_per_shot) {
      ++out.collisions;
      ++out.zeros;
      continue;
    }
    double p0 = fixed_p0;
    if (p0 < 0.0) {
      const ShotDrift drift = draw_shot_drift(noise, rng);
      QubitState s = QubitState::zero();
      for (const PhysicalPulse& n : nominal) s = apply(arb_rotation(perturb_pulse(n, hw, noise, drift, rng)), s);
      p0 = dephase(s, coherence).rho00;
    }
    if (rng.uniform() < p0) ++out.zeros;
  }
  out.p0_estimate = static_cast<double>(out.zeros) / static_cast<double>(out.shots_used);
  return out;
}

std::pair<HardwareProfile, NoiseConfig> calibrated_default() {
  HardwareProfile hw;
  NoiseConfig noise;
  noise.detuning_sigma = 2e3;
  noise.phase_jitter_sigma = 2.0 * std::numbers::pi * 1e-3;
  noise.timing_jitter = 10e-9;
  noise.intensity_rel_sigma = 0.02;
  noise.collision_prob_per_shot = 0.01;
  noise.shots = 100;
  // Stochastic terms alone cost under half a point of accuracy; a fixed
  // over-rotation of 0.3 rad per pulse brings circle to about 93%.
  noise.systematic_delta_offset = 0.3;
  noise.systematic_gamma_offset = 0.0;
  return {hw, noise};
}

EmulatorExecutor::EmulatorExecutor(HardwareProfile hw, NoiseConfig noise) : hw_(hw), noise_(noise) {
  hw_.validate();
  noise_.validate();
}

double EmulatorExecutor::p0(std::span<const RotationParams> pulses, std::uint64_t stream) const {
  return noisy_execute(pulses, hw_, noise_, stream).p0_estimate;
}

std::unique_ptr<Executor> EmulatorExecutor::with_shots(int shots) const {
  NoiseConfig n = noise_;
  n.shots = shots;
  return std::make_unique<EmulatorExecutor>(hw_, n);
}

void load_profiles(std::istream& in, HardwareProfile& hw, NoiseConfig& noise) {
  const KeyValueFile kv = KeyValueFile::parse(in);
  for (const auto& [key, value] : kv.entries()) {
    if (key == "rabi_frequency") hw.rabi_frequency = kv.get_double(key);
    else if (key == "pi_time") hw.pi_time = kv.get_double(key);
    else if (key == "coherence_time") hw.coherence_time = kv.get_double(key);
    else if (key == "detuning_sigma") noise.detuning_sigma = kv.get_double(key);
    else if (key == "phase_jitter_sigma") noise.phase_jitter_sigma = kv.get_double(key);
    else if (key == "timing_jitter") noise.timing_jitter = kv.get_double(key);
    else if (key == "intensity_rel_sigma") noise.intensity_rel_sigma = kv.get_double(key);
    else if (key == "collision_prob_per_shot") noise.collision_prob_per_shot = kv.get_double(key);
    else if (key == "shots") noise.shots = static_cast<int>(kv.get_int(key));
    else if (key == "systematic_delta_offset") noise.systematic_delta_offset = kv.get_double(key);
    else if (key == "systematic_gamma_offset") noise.systematic_gamma_offset = kv.get_double(key);
    else throw ConfigError(key, "unknown profile key");
  }
  try {
    hw.validate();
    noise.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("", e.what());
  }
}

void save_profiles(std::ostream& out, const HardwareProfile& hw, const NoiseConfig& noise) {
  KeyValueFile kv;
  kv.set_double("rabi_frequency", hw.rabi_frequency);
  kv.set_double("pi_time", hw.pi_time);
  kv.set_double("coherence_time", hw.coherence_time);
  kv.set_double("detuning_sigma", noise.detuning_sigma);
  kv.set_double("phase_jitter_sigma", noise.phase_jitter_sigma);
  kv.set_double("timing_jitter", noise.timing_jitter);
  kv.set_double("intensity_rel_sigma", noise.intensity_rel_sigma);
  kv.set_double("collision_prob_per_shot", noise.collision_prob_per_shot);
  kv.set("shots", std::to_string(noise.shots));
  kv.set_double("systematic_delta_offset", noise.systematic_delta_offset);
  kv.set_double("systematic_gamma_offset", noise.systematic_gamma_offset);
  kv.write(out);
}

std::string shot_outcome_json(const ShotOutcome& o) {
  nlohmann::ordered_json j;
  j["p0_estimate"] = o.p0_estimate;
  j["shots_used"] = o.shots_used;
  j["collisions"] = o.collisions;
  return j.dump(2);
}

}  // namespace reupload
