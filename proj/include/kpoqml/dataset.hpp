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

#include <cstdint>
#include <string>

#include <Eigen/Dense>

namespace kpoqml {

/// Supervised training pairs, one row per sample.
struct Dataset {
  Eigen::MatrixXd inputs;  // N x d_x
  Eigen::MatrixXd labels;  // N x d_y
  std::uint64_t seed = 0;
  std::string target;

  Eigen::Index size() const noexcept { return inputs.rows(); }
};

}  // namespace kpoqml
