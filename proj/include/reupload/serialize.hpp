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

#include <string>

#include "reupload/circuit.hpp"
#include "reupload/training.hpp"

namespace reupload {

/// {"ansatz": "A", "dim": d, "layers": [[...], ...]} with each layer in
/// canonical order.
std::string parameter_set_to_json(const ParameterSet& theta);
ParameterSet parameter_set_from_json(const std::string& text);

/// Field names follow TrainReport.
std::string train_report_to_json(const TrainReport& report);
TrainReport train_report_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace reupload
