// Copyright 2026 The kpoqml Authors
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

// JSON experiment configs and result files.
//
// A config is one JSON object with "schema_version": 1. Every section is
// optional; omitted fields take the reference settings of the chosen model
// variant (see ExperimentConfig::single_kpo and friends). Unknown keys are
// rejected. Errors are ValidationErrors whose field() is the dotted JSON path.

#include <string>
#include <vector>

#include "kpoqml/experiments.hpp"

namespace kpoqml {

inline constexpr int kSchemaVersion = 1;

ExperimentConfig parse_experiment_config(const std::string& json_text);
std::string experiment_config_to_json(const ExperimentConfig& config);

// Sweep values from the optional "sweep" section, or the defaults.
std::vector<double> sweep_alpha_values(const std::string& json_text);
std::vector<int> sweep_sample_sizes(const std::string& json_text);

std::string record_to_json(const TrainingRecord& record);
// "x,f" rows
std::string fit_csv(const TrainingRecord& record);
// "nu,abs_F,phase" rows
std::string spectrum_csv(const TrainingRecord& record);
// "t,fidelity" rows
std::string fidelity_csv(const std::vector<std::pair<double, double>>& trace);

// Shortest round-trip decimal form, independent of the C locale.
std::string format_double(double value);

}  // namespace kpoqml
