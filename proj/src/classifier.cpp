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

#include "reupload/classifier.hpp"

#include "reupload/errors.hpp"
#include "reupload/rng.hpp"

namespace reupload {

namespace {

void check_data(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels) {
  if (data.empty()) throw InvalidArgument("dataset is empty");
  for (const Sample& s : data.samples) {
    if (s.x.size() != theta.dim()) throw InvalidArgument("sample dimension does not match parameter set");
    if (s.c >= labels.k) throw InvalidArgument("sample class exceeds label count");
  }
}

}  // namespace

std::vector<double> class_probabilities(std::span<const double> f) {
  if (f.empty()) throw InvalidArgument("fidelity vector is empty");
  double total = 0.0;
  for (double v : f) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("fidelity outside [0, 1]");
    total += v;
  }
  if (total <= 0.0) throw DegenerateInput("all fidelities are zero");
  std::vector<double> out(f.begin(), f.end());
  for (double& v : out) v /= total;
  return out;
}

std::size_t guess_class(std::span<const double> f) {
  if (f.empty()) throw InvalidArgument("fidelity vector is empty");
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.size(); ++i)
    if (f[i] > f[best]) best = i;
  return best;
}

std::uint64_t sample_stream(std::uint64_t stream_seed, std::size_t sample, std::size_t label) {
  return mix_key({stream_seed, sample, label});
}

std::vector<double> fidelities(const ParameterSet& theta, std::span<const double> x, const LabelStateSet& labels,
                               const Executor& executor, std::uint64_t stream_seed, std::size_t sample) {
  if (x.size() != theta.dim()) throw InvalidArgument("feature dimension does not match parameter set");
  std::vector<double> out(labels.k);
  std::vector<RotationParams> pulses;
  for (std::size_t c = 0; c < labels.k; ++c) {
    fuse_into(theta, x, labels.gates[c], pulses);
    out[c] = executor.p0(pulses, executor.exact() ? 0 : sample_stream(stream_seed, sample, c));
  }
  return out;
}

Prediction predict(const ParameterSet& theta, std::span<const double> x, const LabelStateSet& labels,
                   const Executor& executor, std::uint64_t stream_seed, std::size_t sample) {
  Prediction p;
  p.fidelities = fidelities(theta, x, labels, executor, stream_seed, sample);
  p.guess = guess_class(p.fidelities);
  double total = 0.0;
  for (double v : p.fidelities) total += v;
  // A finite-shot executor can report zero for every label; fall back to uniform.
  p.probabilities = total > 0.0 ? class_probabilities(p.fidelities)
                                : std::vector<double>(labels.k, 1.0 / static_cast<double>(labels.k));
  return p;
}

double chi2_loss(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                 const Executor& executor, std::uint64_t stream_seed) {
  check_data(theta, data, labels);
  std::vector<RotationParams> pulses;
  double sum = 0.0;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const Sample& s = data.samples[i];
    fuse_into(theta, s.x, labels.gates[s.c], pulses);
    const double f = executor.p0(pulses, executor.exact() ? 0 : sample_stream(stream_seed, i, s.c));
    sum += (f - 1.0) * (f - 1.0);
  }
  return sum / static_cast<double>(data.samples.size());
}

double accuracy(const ParameterSet& theta, const Dataset& data, const LabelStateSet& labels,
                const Executor& executor, std::uint64_t stream_seed) {
  check_data(theta, data, labels);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < data.samples.size(); ++i) {
    const Sample& s = data.samples[i];
    if (guess_class(fidelities(theta, s.x, labels, executor, stream_seed, i)) == s.c) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(data.samples.size());
}

}  // namespace reupload
