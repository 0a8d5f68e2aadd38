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

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kpoqml {

struct NelderMeadConfig {
  double reflection = 1.0;
  double expansion = 2.0;
  double contraction = 0.5;
  double shrink = 0.5;
  double x_tolerance = 1e-4;
  double f_tolerance = 1e-4;
  // Unset means 200 * n for n parameters.
  std::optional<std::size_t> max_iterations;
  // Unset means unlimited.
  std::optional<std::size_t> max_evaluations;

  void validate() const;
  std::size_t iteration_limit(std::size_t n) const;
};

enum class Termination { kTolerance, kMaxIterations, kMaxEvaluations };

std::string to_string(Termination t);

struct OptimTrace {
  std::vector<double> best_cost;  // after each iteration
  std::vector<double> theta;
  double cost = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  Termination reason = Termination::kTolerance;
};

using CostFn = std::function<double(std::span<const double>)>;

/// Nelder-Mead simplex minimization.
///
/// The initial simplex perturbs one coordinate of theta0 per vertex: scaled by
/// 1.05, or set to 2.5e-4 when it is zero. Each iteration sorts the simplex,
/// tests convergence (max |x_i - x_best| <= x_tolerance and
/// max |f_i - f_best| <= f_tolerance), then performs one reflection /
/// expansion / contraction / shrink update. Iteration and evaluation limits are
/// checked before every iteration. Throws NonFiniteCostError on NaN or inf.
OptimTrace minimize(const CostFn& cost, std::span<const double> theta0,
                    const NelderMeadConfig& config = {});

}  // namespace kpoqml
