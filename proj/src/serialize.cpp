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

#include "reupload/serialize.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "reupload/errors.hpp"

namespace reupload {

namespace {

using Json = nlohmann::ordered_json;

Json theta_json(const ParameterSet& theta) {
  Json j;
  j["ansatz"] = std::string(to_string(theta.ansatz()));
  j["dim"] = theta.dim();
  Json layers = Json::array();
  const auto flat = theta.flat();
  for (std::size_t i = 0; i < theta.layers(); ++i) {
    const auto first = flat.begin() + static_cast<std::ptrdiff_t>(i * theta.per_layer());
    layers.push_back(std::vector<double>(first, first + static_cast<std::ptrdiff_t>(theta.per_layer())));
  }
  j["layers"] = std::move(layers);
  return j;
}

ParameterSet theta_from(const nlohmann::json& j) {
  try {
    const Ansatz ansatz = parse_ansatz(j.at("ansatz").get<std::string>());
    const auto dim = j.at("dim").get<std::size_t>();
    std::vector<double> flat;
    const auto& layers = j.at("layers");
    for (const auto& layer : layers) {
      const auto values = layer.get<std::vector<double>>();
      if (values.size() != params_per_layer(ansatz, dim)) throw InvalidArgument("layer has the wrong parameter count");
      flat.insert(flat.end(), values.begin(), values.end());
    }
    return ParameterSet(ansatz, dim, layers.size(), std::move(flat));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed parameter set: ") + e.what());
  }
}

}  // namespace

std::string parameter_set_to_json(const ParameterSet& theta) { return theta_json(theta).dump(2); }

ParameterSet parameter_set_from_json(const std::string& text) {
  try {
    return theta_from(nlohmann::json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("malformed parameter set: ") + e.what());
  }
}

std::string train_report_to_json(const TrainReport& r) {
  Json j;
  j["theta_sim"] = theta_json(r.theta_sim);
  Json history = Json::array();
  for (const LossPoint& p : r.loss_history) history.push_back(Json::array({p.evaluation, p.loss}));
  j["loss_history"] = std::move(history);
  j["final_loss"] = r.final_loss;
  j["train_accuracy"] = r.train_accuracy;
  j["test_accuracy"] = r.test_accuracy;
  j["wall_time"] = r.wall_time;
  j["seed"] = r.seed;
  return j.dump(2);
}

TrainReport train_report_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    TrainReport r{theta_from(j.at("theta_sim")), {}, 0.0, 0.0, 0.0, 0.0, 0};
    for (const auto& p : j.at("loss_history")) r.loss_history.push_back({p.at(0).get<std::size_t>(), p.at(1).get<double>()});
    r.final_loss = j.at("final_loss").get<double>();
    r.train_accuracy = j.at("train_accuracy").get<double>();
    r.test_accuracy = j.at("test_accuracy").get<double>();
    r.wall_time = j.at("wall_time").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed train report: ") + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << contents;
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

}  // namespace reupload
