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
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kpoqml/dataset.hpp"
#include "kpoqml/model.hpp"
#include "kpoqml/nelder_mead.hpp"

namespace kpoqml {

enum class Target { kGaussian, kAbs, kSquareWave, kTwoSines, kCustom };

std::string to_string(Target t);
// Throws ValidationError("dataset.target") for unknown names.
Target target_from_string(const std::string& name);

/// Regression targets on [-1, 1]:
///   gaussian    exp(-36 x^2)
///   abs         |x|
///   square-wave 1 for |x| < 0.4, else 0
///   two-sines   0.4 sin(4 pi x) + 0.5 sin(6 pi x)
/// `custom` wraps a caller-supplied function.
class TargetFunction {
 public:
  TargetFunction(Target id);  // NOLINT(google-explicit-constructor)
  explicit TargetFunction(std::function<double(double)> custom);

  Target id() const noexcept { return id_; }
  double operator()(double x) const;

 private:
  Target id_;
  std::function<double(double)> custom_;
};

/// x_m i.i.d. uniform on [-1, 1] from CounterRng(seed, kDatasetStream);
/// y_m = target(x_m).
Dataset generate_dataset(const TargetFunction& target, int size, std::uint64_t seed);

struct DatasetParams {
  Target target = Target::kGaussian;
  int size = 100;
  std::uint64_t seed = 0;
};

struct ThetaInit {
  std::uint64_t seed = 0;
  double low = -1.0;
  double high = 1.0;
  std::vector<double> theta0;  // when non-empty, used verbatim
};

struct AnalysisParams {
  int fit_points = 401;
  int spectrum_points = 401;
  double nu_max = 15.0;
  double nu_step = 0.25;
  int test_points = 1000;
};

struct ExperimentConfig {
  ModelSpec model;
  NelderMeadConfig optimizer;
  DatasetParams dataset;
  ThetaInit theta_init;
  AnalysisParams analysis;

  void validate() const;

  // Settings of the reference regression runs. All three models expose 36
  // parameters; the optimizer stops after 200 n iterations or 200 n cost
  // evaluations, whichever comes first.
  static ExperimentConfig single_kpo(Target target);
  static ExperimentConfig kpo_network(Target target);
  static ExperimentConfig qubit_baseline(Target target);
};

/// theta0 verbatim if given, else uniform on [low, high] from
/// CounterRng(seed, kThetaStream).
std::vector<double> initial_theta(const ExperimentConfig& config);

struct Spectrum {
  std::vector<double> nu;
  std::vector<double> magnitude;
  std::vector<double> phase;
};

struct TrainingRecord {
  ExperimentConfig config;
  Dataset dataset;
  OptimTrace trace;
  double final_cost = 0.0;
  // Scalar-input, scalar-output models only; empty otherwise.
  std::vector<double> fit_x;
  std::vector<double> fit_f;
  Spectrum spectrum;
  double test_mse = 0.0;
};

TrainingRecord train(const ExperimentConfig& config);

// linspace(-1, 1, points)
std::vector<double> uniform_grid(int points);
// 0, step, 2 step, ..., up to nu_max inclusive
std::vector<double> frequency_grid(double nu_max, double step);

/// F(nu) = (2 pi)^{-1/2} int_{-1}^{1} F(x) exp(-2 pi i nu x) dx by composite
/// trapezoidal quadrature; `samples` lie on uniform_grid(samples.size()).
Spectrum fourier_transform_numeric(std::span<const double> samples,
                                   std::span<const double> nus);
Spectrum fourier_transform_numeric(const std::function<double(double)>& f,
                                   std::span<const double> nus, int grid_points = 401);

/// MSE of the model against the target on uniform_grid(points).
double test_mse(const Model& model, std::span<const double> theta,
                const TargetFunction& target, int points = 1000);

struct SupportOptions {
  int grid_points = 401;
  double nu_max = 15.0;
};

/// Largest frequency on the half-integer lattice nu = m / 2 (m = 0..2 nu_max)
/// at which |F(nu)| of the model output exceeds `threshold`; 0 if none.
double spectral_support(const Model& model, std::span<const double> theta, double threshold,
                        const SupportOptions& options = {});
/// Median of the above over several parameter samples.
double spectral_support(const ModelSpec& spec, std::span<const std::vector<double>> thetas,
                        double threshold, const SupportOptions& options = {});

struct SweepPoint {
  double value = 0.0;  // N or alpha
  TrainingRecord record;
};

inline constexpr int kDefaultSampleSizes[] = {10, 30, 100, 300, 1000};
inline constexpr double kDefaultAlphas[] = {1.0, 3.0, 5.0};

/// Copy of `config` with every mode's amplitude set to `alpha`; modes whose
/// cutoff is below 100 are raised to 100 for alpha > 3.
ExperimentConfig with_alpha(const ExperimentConfig& config, double alpha);
ExperimentConfig with_sample_size(const ExperimentConfig& config, int size);

/// Independent runs are spread over `jobs` worker threads; results come back
/// in input order.
std::vector<SweepPoint> sweep_sample_size(const ExperimentConfig& config,
                                          std::span<const int> sizes = kDefaultSampleSizes,
                                          int jobs = 1);
std::vector<SweepPoint> sweep_alpha(const ExperimentConfig& config,
                                    std::span<const double> alphas = kDefaultAlphas,
                                    int jobs = 1);

/// Runs `task(i)` for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task);

}  // namespace kpoqml
