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

#include "reupload/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "reupload/errors.hpp"
#include "reupload/rng.hpp"

namespace reupload {

namespace {

double activate(Activation a, double z) {
  switch (a) {
    case Activation::Tanh: return std::tanh(z);
    case Activation::Relu: return z > 0.0 ? z : 0.0;
    case Activation::Logistic: return 1.0 / (1.0 + std::exp(-z));
  }
  return z;
}

// Derivative expressed through the activation value h = act(z) (and z for relu).
double activate_prime(Activation a, double z, double h) {
  switch (a) {
    case Activation::Tanh: return 1.0 - h * h;
    case Activation::Relu: return z > 0.0 ? 1.0 : 0.0;
    case Activation::Logistic: return h * (1.0 - h);
  }
  return 1.0;
}

struct Forward {
  std::vector<double> z, h, probs;
};

Forward forward(const NNModel& m, std::span<const double> x) {
  Forward f;
  f.z.resize(m.hidden);
  f.h.resize(m.hidden);
  for (std::size_t j = 0; j < m.hidden; ++j) {
    double z = m.b1[j];
    for (std::size_t i = 0; i < m.input_dim; ++i) z += m.w1[j * m.input_dim + i] * x[i];
    f.z[j] = z;
    f.h[j] = activate(m.activation, z);
  }
  f.probs.resize(m.classes);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < m.classes; ++c) {
    double o = m.b2[c];
    for (std::size_t j = 0; j < m.hidden; ++j) o += m.w2[c * m.hidden + j] * f.h[j];
    f.probs[c] = o;
    top = std::max(top, o);
  }
  double total = 0.0;
  for (double& p : f.probs) {
    p = std::exp(p - top);
    total += p;
  }
  for (double& p : f.probs) p /= total;
  return f;
}

void check_dims(const NNModel& m, const Dataset& data) {
  for (const Sample& s : data.samples) {
    if (s.x.size() != m.input_dim) throw InvalidArgument("sample dimension does not match network input");
    if (s.c >= m.classes) throw InvalidArgument("sample class exceeds network outputs");
  }
}

NNModel train_one(const Dataset& train, std::size_t hidden, Activation act, std::uint64_t seed,
                  const NNTrainOptions& opt) {
  const std::size_t d = problem_dim(train.problem);
  const std::size_t k = problem_classes(train.problem);
  NNModel best;
  double best_loss = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < opt.restarts; ++r) {
    NNModel m = NNModel::zeros(d, hidden, k, act);
    CounterRng rng(mix_key({seed, 0x4E4Eull, static_cast<std::uint64_t>(act), r}));
    // Glorot-uniform weights, zero biases.
    const double a1 = std::sqrt(6.0 / static_cast<double>(d + hidden));
    const double a2 = std::sqrt(6.0 / static_cast<double>(hidden + k));
    for (double& w : m.w1) w = rng.uniform(-a1, a1);
    for (double& w : m.w2) w = rng.uniform(-a2, a2);

    std::vector<double> params = m.flat();
    std::vector<double> velocity(params.size(), 0.0);
    std::vector<double> best_params = params;
    double run_best = std::numeric_limits<double>::infinity();
    std::vector<double> history;
    history.reserve(opt.epochs);
    for (std::size_t epoch = 0; epoch < opt.epochs; ++epoch) {
      m.set_flat(params);
      const double loss = nn_loss(m, train);
      if (!std::isfinite(loss)) throw TrainingError("neural network loss became non-finite");
      if (loss < run_best) {
        run_best = loss;
        best_params = params;
      }
      history.push_back(run_best);
      const std::vector<double> g = nn_gradient(m, train);
      for (std::size_t i = 0; i < params.size(); ++i) {
        velocity[i] = opt.momentum * velocity[i] - opt.learning_rate * g[i];
        params[i] += velocity[i];
      }
    }
    if (run_best < best_loss) {
      best_loss = run_best;
      best = m;
      best.set_flat(best_params);
      best.loss_history = std::move(history);
    }
  }
  return best;
}

}  // namespace

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Tanh: return "tanh";
    case Activation::Relu: return "relu";
    case Activation::Logistic: return "logistic";
  }
  return "?";
}

Activation parse_activation(std::string_view s) {
  if (s == "tanh") return Activation::Tanh;
  if (s == "relu") return Activation::Relu;
  if (s == "logistic") return Activation::Logistic;
  throw InvalidArgument("unknown activation '" + std::string(s) + "'");
}

NNModel NNModel::zeros(std::size_t input_dim, std::size_t hidden, std::size_t classes, Activation act) {
  if (input_dim == 0 || hidden == 0 || classes == 0) throw InvalidArgument("network shape must be positive");
  NNModel m;
  m.input_dim = input_dim;
  m.hidden = hidden;
  m.classes = classes;
  m.activation = act;
  m.w1.assign(hidden * input_dim, 0.0);
  m.b1.assign(hidden, 0.0);
  m.w2.assign(classes * hidden, 0.0);
  m.b2.assign(classes, 0.0);
  return m;
}

std::vector<double> NNModel::flat() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  out.insert(out.end(), w1.begin(), w1.end());
  out.insert(out.end(), b1.begin(), b1.end());
  out.insert(out.end(), w2.begin(), w2.end());
  out.insert(out.end(), b2.begin(), b2.end());
  return out;
}

void NNModel::set_flat(std::span<const double> f) {
  if (f.size() != parameter_count()) throw InvalidArgument("flat parameter count does not match network");
  auto it = f.begin();
  for (auto* v : {&w1, &b1, &w2, &b2}) {
    std::copy(it, it + static_cast<std::ptrdiff_t>(v->size()), v->begin());
    it += static_cast<std::ptrdiff_t>(v->size());
  }
}

std::vector<double> NNModel::softmax(std::span<const double> x) const {
  if (x.size() != input_dim) throw InvalidArgument("input dimension does not match network");
  return forward(*this, x).probs;
}

std::size_t NNModel::predict(std::span<const double> x) const {
  const std::vector<double> p = softmax(x);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::size_t match_width(std::size_t quantum_params, std::size_t d, std::size_t k) {
  if (d == 0 || k == 0) throw InvalidArgument("input and output sizes must be positive");
  // h (d + 1) + (h + 1) k <= budget  <=>  h <= (budget - k) / (d + 1 + k)
  if (quantum_params < d + 1 + 2 * k)
    throw InvalidArgument("parameter budget " + std::to_string(quantum_params) + " cannot fit one hidden unit");
  return (quantum_params - k) / (d + 1 + k);
}

double nn_loss(const NNModel& m, const Dataset& data) {
  if (data.empty()) throw InvalidArgument("dataset is empty");
  check_dims(m, data);
  double total = 0.0;
  for (const Sample& s : data.samples) {
    const Forward f = forward(m, s.x);
    total -= std::log(std::max(f.probs[s.c], 1e-300));
  }
  return total / static_cast<double>(data.size());
}

std::vector<double> nn_gradient(const NNModel& m, const Dataset& data) {
  if (data.empty()) throw InvalidArgument("dataset is empty");
  check_dims(m, data);
  const std::size_t d = m.input_dim, h = m.hidden, k = m.classes;
  std::vector<double> gw1(h * d, 0.0), gb1(h, 0.0), gw2(k * h, 0.0), gb2(k, 0.0);
  std::vector<double> delta_out(k), delta_hidden(h);
  for (const Sample& s : data.samples) {
    const Forward f = forward(m, s.x);
    for (std::size_t c = 0; c < k; ++c) delta_out[c] = f.probs[c] - (c == s.c ? 1.0 : 0.0);
    for (std::size_t j = 0; j < h; ++j) {
      double back = 0.0;
      for (std::size_t c = 0; c < k; ++c) {
        gw2[c * h + j] += delta_out[c] * f.h[j];
        back += delta_out[c] * m.w2[c * h + j];
      }
      delta_hidden[j] = back * activate_prime(m.activation, f.z[j], f.h[j]);
    }
    for (std::size_t c = 0; c < k; ++c) gb2[c] += delta_out[c];
    for (std::size_t j = 0; j < h; ++j) {
      for (std::size_t i = 0; i < d; ++i) gw1[j * d + i] += delta_hidden[j] * s.x[i];
      gb1[j] += delta_hidden[j];
    }
  }
  std::vector<double> g;
  g.reserve(m.parameter_count());
  const double inv = 1.0 / static_cast<double>(data.size());
  for (const auto* v : {&gw1, &gb1, &gw2, &gb2})
    for (double x : *v) g.push_back(x * inv);
  return g;
}

NNModel train_nn(const Dataset& train, std::size_t hidden, std::optional<Activation> activation,
                 std::uint64_t seed, const NNTrainOptions& options) {
  if (train.empty()) throw InvalidArgument("training set is empty");
  if (hidden == 0) throw InvalidArgument("hidden width must be positive");
  if (activation) return train_one(train, hidden, *activation, seed, options);
  NNModel best;
  double best_acc = -1.0, best_loss = std::numeric_limits<double>::infinity();
  for (Activation a : {Activation::Tanh, Activation::Relu, Activation::Logistic}) {
    NNModel m = train_one(train, hidden, a, seed, options);
    const double acc = nn_accuracy(m, train);
    const double loss = nn_loss(m, train);
    if (acc > best_acc || (acc == best_acc && loss < best_loss)) {
      best_acc = acc;
      best_loss = loss;
      best = std::move(m);
    }
  }
  return best;
}

double nn_accuracy(const NNModel& m, const Dataset& data) {
  if (data.empty()) throw InvalidArgument("dataset is empty");
  for (const Sample& s : data.samples)
    if (s.x.size() != m.input_dim) throw InvalidArgument("sample dimension does not match network input");
  std::size_t correct = 0;
  for (const Sample& s : data.samples)
    if (m.predict(s.x) == s.c) ++correct;
  return static_cast<double>(correct) / static_cast<double>(data.size());
}

std::string nn_to_json(const NNModel& m) {
  nlohmann::ordered_json j;
  j["input_dim"] = m.input_dim;
  j["hidden"] = m.hidden;
  j["classes"] = m.classes;
  j["activation"] = std::string(to_string(m.activation));
  j["w1"] = m.w1;
  j["b1"] = m.b1;
  j["w2"] = m.w2;
  j["b2"] = m.b2;
  return j.dump(2);
}

NNModel nn_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  NNModel m = NNModel::zeros(j.at("input_dim").get<std::size_t>(), j.at("hidden").get<std::size_t>(),
                             j.at("classes").get<std::size_t>(),
                             parse_activation(j.at("activation").get<std::string>()));
  std::vector<double> flat;
  for (const char* key : {"w1", "b1", "w2", "b2"})
    for (double v : j.at(key).get<std::vector<double>>()) flat.push_back(v);
  m.set_flat(flat);
  return m;
}

}  // namespace reupload
