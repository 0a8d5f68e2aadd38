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

#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "kpoqml/error.hpp"
#include "kpoqml/nelder_mead.hpp"

using namespace kpoqml;

namespace {

double quadratic(std::span<const double> x) {
  return (x[0] - 1.0) * (x[0] - 1.0) + (x[1] + 2.0) * (x[1] + 2.0);
}

double rosenbrock(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    s += 100.0 * std::pow(x[i + 1] - x[i] * x[i], 2) + std::pow(1.0 - x[i], 2);
  }
  return s;
}

}  // namespace

TEST_CASE("quadratic minimum") {
  NelderMeadConfig cfg;
  cfg.x_tolerance = 1e-8;
  cfg.f_tolerance = 1e-14;
  const std::vector<double> start{0.0, 0.0};
  const OptimTrace t = minimize(quadratic, start, cfg);
  CHECK(t.reason == Termination::kTolerance);
  CHECK(t.iterations < 200);
  CHECK(std::abs(t.theta[0] - 1.0) <= 1e-6);
  CHECK(std::abs(t.theta[1] + 2.0) <= 1e-6);
  CHECK(t.cost == quadratic(t.theta));
}

TEST_CASE("default tolerances on the quadratic") {
  const std::vector<double> start{0.0, 0.0};
  const OptimTrace t = minimize(quadratic, start);
  CHECK(t.reason == Termination::kTolerance);
  CHECK(std::abs(t.theta[0] - 1.0) <= 1e-3);
  CHECK(std::abs(t.theta[1] + 2.0) <= 1e-3);
}

TEST_CASE("best cost never increases and the trace is deterministic") {
  const std::vector<double> start(6, 0.3);
  const OptimTrace a = minimize(rosenbrock, start);
  const OptimTrace b = minimize(rosenbrock, start);
  REQUIRE(a.best_cost.size() == a.iterations);
  for (std::size_t i = 1; i < a.best_cost.size(); ++i) CHECK(a.best_cost[i] <= a.best_cost[i - 1]);
  CHECK(a.best_cost == b.best_cost);
  CHECK(a.theta == b.theta);
  CHECK(a.evaluations == b.evaluations);
  CHECK(a.evaluations > a.iterations);
}

TEST_CASE("36 parameters stop at 7200 iterations") {
  const std::vector<double> start(36, 0.0);
  const OptimTrace t = minimize(rosenbrock, start);
  CHECK(t.reason == Termination::kMaxIterations);
  CHECK(t.iterations == 7200);
  CHECK(t.best_cost.size() == 7200);
}

TEST_CASE("evaluation limit") {
  NelderMeadConfig cfg;
  cfg.max_evaluations = 500;
  const std::vector<double> start(10, 0.5);
  const OptimTrace t = minimize(rosenbrock, start, cfg);
  CHECK(t.reason == Termination::kMaxEvaluations);
  // The limit is checked before each iteration, which may use up to n + 2 calls.
  CHECK(t.evaluations >= 500);
  CHECK(t.evaluations <= 500 + 12);
}

TEST_CASE("constant cost converges at the first check") {
  const std::vector<double> start{0.0, 1.0, 2.0};
  NelderMeadConfig loose;
  loose.x_tolerance = 1.0;
  const OptimTrace t = minimize([](std::span<const double>) { return 3.0; }, start, loose);
  CHECK(t.reason == Termination::kTolerance);
  CHECK(t.iterations == 0);
  CHECK(t.cost == 3.0);
  CHECK(t.evaluations == 4);
}

TEST_CASE("initial simplex perturbs one coordinate by five percent") {
  std::vector<std::vector<double>> seen;
  const std::vector<double> start{2.0, 0.0};
  NelderMeadConfig cfg;
  cfg.max_iterations = 1;
  minimize(
      [&](std::span<const double> x) {
        seen.emplace_back(x.begin(), x.end());
        return x[0] + x[1];
      },
      start, cfg);
  REQUIRE(seen.size() >= 3);
  CHECK(seen[0] == std::vector<double>{2.0, 0.0});
  CHECK(seen[1] == std::vector<double>{2.1, 0.0});
  CHECK(seen[2] == std::vector<double>{2.0, 0.00025});
}

TEST_CASE("non-finite cost is reported with the offending point") {
  const std::vector<double> start{0.0, 0.0};
  try {
    minimize(
        [](std::span<const double> x) {
          return x[0] > 0.5 ? std::numeric_limits<double>::quiet_NaN() : -x[0];
        },
        start);
    FAIL("expected NonFiniteCostError");
  } catch (const NonFiniteCostError& e) {
    CHECK(e.theta()[0] > 0.5);
  }
}

TEST_CASE("configuration checks") {
  const std::vector<double> start{0.0, 0.0};
  CHECK_THROWS_AS(minimize(quadratic, std::vector<double>{}), ValidationError);
  NelderMeadConfig bad;
  bad.expansion = 0.5;
  CHECK_THROWS_AS(minimize(quadratic, start, bad), ValidationError);
  bad = {};
  bad.max_iterations = 0;
  CHECK_THROWS_AS(minimize(quadratic, start, bad), ValidationError);
  CHECK(NelderMeadConfig{}.iteration_limit(36) == 7200);
}
