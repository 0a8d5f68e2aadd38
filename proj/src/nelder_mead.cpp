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

#include "kpoqml/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Dense>

#include "kpoqml/error.hpp"

namespace kpoqml {

namespace {

constexpr double kNonzeroDelta = 0.05;
constexpr double kZeroDelta = 0.00025;

}  // namespace

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kTolerance: return "tolerance";
    case Termination::kMaxIterations: return "max-iterations";
    case Termination::kMaxEvaluations: return "max-evaluations";
  }
  return "unknown";
}

void NelderMeadConfig::validate() const {
  if (!(reflection > 0.0)) throw ValidationError("optimizer.reflection", "must be positive");
  if (!(expansion > reflection)) throw ValidationError("optimizer.expansion", "must exceed reflection");
  if (!(contraction > 0.0 && contraction < 1.0)) {
    throw ValidationError("optimizer.contraction", "must lie in (0, 1)");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) throw ValidationError("optimizer.shrink", "must lie in (0, 1)");
  if (!(x_tolerance >= 0.0)) throw ValidationError("optimizer.x_tolerance", "must be non-negative");
  if (!(f_tolerance >= 0.0)) throw ValidationError("optimizer.f_tolerance", "must be non-negative");
  if (max_iterations && *max_iterations < 1) {
    throw ValidationError("optimizer.max_iterations", "must be at least 1");
  }
  if (max_evaluations && *max_evaluations < 1) {
    throw ValidationError("optimizer.max_evaluations", "must be at least 1");
  }
}

std::size_t NelderMeadConfig::iteration_limit(std::size_t n) const {
  return max_iterations.value_or(200 * n);
}

OptimTrace minimize(const CostFn& cost, std::span<const double> theta0,
                    const NelderMeadConfig& config) {
  config.validate();
  const Eigen::Index n = static_cast<Eigen::Index>(theta0.size());
  if (n == 0) throw ValidationError("theta0", "empty parameter vector");
  const std::size_t max_iter = config.iteration_limit(theta0.size());

  OptimTrace trace;
  auto evaluate = [&](const Eigen::VectorXd& x) {
    ++trace.evaluations;
    const double f = cost(std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
    if (!std::isfinite(f)) {
      throw NonFiniteCostError("cost function returned a non-finite value",
                               std::vector<double>(x.data(), x.data() + x.size()));
    }
    return f;
  };

  // Vertices are the columns of `sim`.
  Eigen::MatrixXd sim(n, n + 1);
  sim.col(0) = Eigen::Map<const Eigen::VectorXd>(theta0.data(), n);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd y = sim.col(0);
    y(k) = y(k) != 0.0 ? (1.0 + kNonzeroDelta) * y(k) : kZeroDelta;
    sim.col(k + 1) = y;
  }
  Eigen::VectorXd fsim(n + 1);
  for (Eigen::Index k = 0; k <= n; ++k) fsim(k) = evaluate(sim.col(k));

  std::vector<Eigen::Index> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return fsim(a) < fsim(b); });
    Eigen::MatrixXd s(n, n + 1);
    Eigen::VectorXd f(n + 1);
    for (Eigen::Index k = 0; k <= n; ++k) {
      s.col(k) = sim.col(order[k]);
      f(k) = fsim(order[k]);
    }
    sim = std::move(s);
    fsim = std::move(f);
  };
  sort_simplex();

  const double rho = config.reflection;
  const double chi = config.expansion;
  const double psi = config.contraction;
  const double sigma = config.shrink;

  while (true) {
    if (trace.iterations >= max_iter) {
      trace.reason = Termination::kMaxIterations;
      break;
    }
    if (config.max_evaluations && trace.evaluations >= *config.max_evaluations) {
      trace.reason = Termination::kMaxEvaluations;
      break;
    }
    const double x_spread =
        (sim.rightCols(n).colwise() - sim.col(0)).cwiseAbs().maxCoeff();
    const double f_spread = (fsim.tail(n).array() - fsim(0)).abs().maxCoeff();
    if (x_spread <= config.x_tolerance && f_spread <= config.f_tolerance) {
      trace.reason = Termination::kTolerance;
      break;
    }

    const Eigen::VectorXd xbar = sim.leftCols(n).rowwise().mean();
    const Eigen::VectorXd worst = sim.col(n);
    const Eigen::VectorXd xr = (1.0 + rho) * xbar - rho * worst;
    const double fxr = evaluate(xr);
    bool do_shrink = false;

    if (fxr < fsim(0)) {
      const Eigen::VectorXd xe = (1.0 + rho * chi) * xbar - rho * chi * worst;
      const double fxe = evaluate(xe);
      if (fxe < fxr) {
        sim.col(n) = xe;
        fsim(n) = fxe;
      } else {
        sim.col(n) = xr;
        fsim(n) = fxr;
      }
    } else if (fxr < fsim(n - 1)) {
      sim.col(n) = xr;
      fsim(n) = fxr;
    } else if (fxr < fsim(n)) {
      // Outside contraction.
      const Eigen::VectorXd xc = (1.0 + psi * rho) * xbar - psi * rho * worst;
      const double fxc = evaluate(xc);
      if (fxc <= fxr) {
        sim.col(n) = xc;
        fsim(n) = fxc;
      } else {
        do_shrink = true;
      }
    } else {
      // Inside contraction.
      const Eigen::VectorXd xcc = (1.0 - psi) * xbar + psi * worst;
      const double fxcc = evaluate(xcc);
      if (fxcc < fsim(n)) {
        sim.col(n) = xcc;
        fsim(n) = fxcc;
      } else {
        do_shrink = true;
      }
    }
    if (do_shrink) {
      for (Eigen::Index k = 1; k <= n; ++k) {
        sim.col(k) = sim.col(0) + sigma * (sim.col(k) - sim.col(0));
        fsim(k) = evaluate(sim.col(k));
      }
    }

    ++trace.iterations;
    sort_simplex();
    trace.best_cost.push_back(fsim(0));
  }

  trace.theta.assign(sim.col(0).data(), sim.col(0).data() + n);
  trace.cost = fsim(0);
  return trace;
}

}  // namespace kpoqml
