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

#include "kpoqml/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include "kpoqml/error.hpp"
#include "kpoqml/rng.hpp"

namespace kpoqml {

namespace {

constexpr double kRecomputeTolerance = 1e-12;
constexpr int kHighAlphaCutoff = 100;

Eigen::MatrixXd column(std::span<const double> values) {
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

bool scalar_model(const ModelSpec& spec) {
  return spec.input_dim == 1 && spec.output_dim() == 1;
}

}  // namespace

std::string to_string(Target t) {
  switch (t) {
    case Target::kGaussian: return "gaussian";
    case Target::kAbs: return "abs";
    case Target::kSquareWave: return "square-wave";
    case Target::kTwoSines: return "two-sines";
    case Target::kCustom: return "custom";
  }
  return "unknown";
}

Target target_from_string(const std::string& name) {
  for (Target t : {Target::kGaussian, Target::kAbs, Target::kSquareWave, Target::kTwoSines,
                   Target::kCustom}) {
    if (to_string(t) == name) return t;
  }
  throw ValidationError("dataset.target", "unknown target '" + name + "'");
}

TargetFunction::TargetFunction(Target id) : id_(id) {
  if (id == Target::kCustom) {
    throw ValidationError("dataset.target", "custom targets need a function");
  }
}

TargetFunction::TargetFunction(std::function<double(double)> custom)
    : id_(Target::kCustom), custom_(std::move(custom)) {
  if (!custom_) throw ValidationError("dataset.target", "empty custom function");
}

double TargetFunction::operator()(double x) const {
  constexpr double pi = std::numbers::pi;
  switch (id_) {
    case Target::kGaussian: return std::exp(-36.0 * x * x);
    case Target::kAbs: return std::abs(x);
    case Target::kSquareWave: return std::abs(x) < 0.4 ? 1.0 : 0.0;
    case Target::kTwoSines: return 0.4 * std::sin(4.0 * pi * x) + 0.5 * std::sin(6.0 * pi * x);
    case Target::kCustom: return custom_(x);
  }
  return 0.0;
}

Dataset generate_dataset(const TargetFunction& target, int size, std::uint64_t seed) {
  if (size < 1) throw ValidationError("dataset.size", "must be at least 1");
  CounterRng rng(seed, kDatasetStream);
  Dataset d;
  d.inputs.resize(size, 1);
  d.labels.resize(size, 1);
  for (int m = 0; m < size; ++m) {
    const double x = rng.uniform(-1.0, 1.0);
    d.inputs(m, 0) = x;
    d.labels(m, 0) = target(x);
  }
  d.seed = seed;
  d.target = to_string(target.id());
  return d;
}

void ExperimentConfig::validate() const {
  model.validate();
  optimizer.validate();
  if (dataset.size < 1) throw ValidationError("dataset.size", "must be at least 1");
  if (dataset.target == Target::kCustom) {
    throw ValidationError("dataset.target", "custom targets are only available through the library API");
  }
  if (!scalar_model(model)) {
    throw ValidationError("model.variant", "built-in targets need scalar inputs and outputs");
  }
  if (!theta_init.theta0.empty() && theta_init.theta0.size() != model.num_params()) {
    throw ValidationError("theta_init.theta0", "expected " + std::to_string(model.num_params()) +
                                                   " entries, got " +
                                                   std::to_string(theta_init.theta0.size()));
  }
  if (!(theta_init.low < theta_init.high)) throw ValidationError("theta_init.low", "must be below high");
  if (analysis.fit_points < 2) throw ValidationError("analysis.fit_points", "must be at least 2");
  if (analysis.spectrum_points < 2) throw ValidationError("analysis.spectrum_points", "must be at least 2");
  if (analysis.test_points < 2) throw ValidationError("analysis.test_points", "must be at least 2");
  if (!(analysis.nu_step > 0.0)) throw ValidationError("analysis.nu_step", "must be positive");
  if (!(analysis.nu_max >= 0.0)) throw ValidationError("analysis.nu_max", "must be non-negative");
}

namespace {

NelderMeadConfig reference_optimizer(std::size_t n) {
  NelderMeadConfig c;
  c.max_iterations = 200 * n;
  c.max_evaluations = 200 * n;
  return c;
}

ExperimentConfig preset(ModelSpec model, Target target) {
  ExperimentConfig c;
  c.model = std::move(model);
  c.optimizer = reference_optimizer(c.model.num_params());
  c.dataset.target = target;
  return c;
}

}  // namespace

ExperimentConfig ExperimentConfig::single_kpo(Target target) {
  return preset(ModelSpec::single_kpo(), target);
}

ExperimentConfig ExperimentConfig::kpo_network(Target target) {
  return preset(ModelSpec::kpo_network(), target);
}

ExperimentConfig ExperimentConfig::qubit_baseline(Target target) {
  return preset(ModelSpec::qubit_baseline(), target);
}

std::vector<double> initial_theta(const ExperimentConfig& config) {
  if (!config.theta_init.theta0.empty()) return config.theta_init.theta0;
  CounterRng rng(config.theta_init.seed, kThetaStream);
  std::vector<double> theta(config.model.num_params());
  for (double& t : theta) t = rng.uniform(config.theta_init.low, config.theta_init.high);
  return theta;
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw ValidationError("points", "a grid needs at least 2 points");
  std::vector<double> x(points);
  for (int i = 0; i < points; ++i) x[i] = -1.0 + 2.0 * i / (points - 1);
  return x;
}

std::vector<double> frequency_grid(double nu_max, double step) {
  if (!(step > 0.0)) throw ValidationError("nu_step", "must be positive");
  std::vector<double> nu;
  const auto count = static_cast<long>(std::floor(nu_max / step + 1e-9));
  for (long i = 0; i <= count; ++i) nu.push_back(step * static_cast<double>(i));
  return nu;
}

Spectrum fourier_transform_numeric(std::span<const double> samples,
                                   std::span<const double> nus) {
  if (samples.size() < 2) throw ValidationError("samples", "empty grid");
  const std::vector<double> x = uniform_grid(static_cast<int>(samples.size()));
  const double h = 2.0 / static_cast<double>(samples.size() - 1);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  Spectrum s;
  for (double nu : nus) {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double w = (i == 0 || i + 1 == samples.size()) ? 0.5 * h : h;
      sum += w * samples[i] * std::polar(1.0, -2.0 * std::numbers::pi * nu * x[i]);
    }
    sum *= norm;
    s.nu.push_back(nu);
    s.magnitude.push_back(std::abs(sum));
    s.phase.push_back(std::arg(sum));
  }
  return s;
}

Spectrum fourier_transform_numeric(const std::function<double(double)>& f,
                                   std::span<const double> nus, int grid_points) {
  const std::vector<double> x = uniform_grid(grid_points);
  std::vector<double> samples(x.size());
  std::transform(x.begin(), x.end(), samples.begin(), f);
  return fourier_transform_numeric(samples, nus);
}

double test_mse(const Model& model, std::span<const double> theta,
                const TargetFunction& target, int points) {
  const std::vector<double> x = uniform_grid(points);
  const Eigen::MatrixXd f = model.evaluate_batch(column(x), theta);
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = f(static_cast<Eigen::Index>(i), 0) - target(x[i]);
    sum += r * r;
  }
  return sum / static_cast<double>(x.size());
}

double spectral_support(const Model& model, std::span<const double> theta, double threshold,
                        const SupportOptions& options) {
  const std::vector<double> x = uniform_grid(options.grid_points);
  const Eigen::MatrixXd f = model.evaluate_batch(column(x), theta);
  const std::vector<double> samples(f.data(), f.data() + f.rows());
  const Spectrum s = fourier_transform_numeric(samples, frequency_grid(options.nu_max, 0.5));
  double support = 0.0;
  for (std::size_t i = 0; i < s.nu.size(); ++i) {
    if (s.magnitude[i] > threshold) support = s.nu[i];
  }
  return support;
}

double spectral_support(const ModelSpec& spec, std::span<const std::vector<double>> thetas,
                        double threshold, const SupportOptions& options) {
  if (thetas.empty()) throw ValidationError("thetas", "need at least one parameter sample");
  const Model model(spec);
  std::vector<double> supports;
  for (const auto& theta : thetas) supports.push_back(spectral_support(model, theta, threshold, options));
  std::sort(supports.begin(), supports.end());
  const std::size_t n = supports.size();
  return n % 2 ? supports[n / 2] : 0.5 * (supports[n / 2 - 1] + supports[n / 2]);
}

TrainingRecord train(const ExperimentConfig& config) {
  config.validate();
  const Model model(config.model);
  const TargetFunction target(config.dataset.target);

  TrainingRecord record;
  record.config = config;
  record.dataset = generate_dataset(target, config.dataset.size, config.dataset.seed);

  const CostFunction cost(model, record.dataset);
  record.trace = minimize([&](std::span<const double> t) { return cost(t); },
                          initial_theta(config), config.optimizer);
  record.final_cost = cost(record.trace.theta);
  if (std::abs(record.final_cost - record.trace.cost) > kRecomputeTolerance) {
    throw Error("recomputed cost " + std::to_string(record.final_cost) +
                " disagrees with the optimizer's " + std::to_string(record.trace.cost));
  }

  record.fit_x = uniform_grid(config.analysis.fit_points);
  const Eigen::MatrixXd fit = model.evaluate_batch(column(record.fit_x), record.trace.theta);
  record.fit_f.assign(fit.data(), fit.data() + fit.rows());

  const std::vector<double> sx = uniform_grid(config.analysis.spectrum_points);
  const Eigen::MatrixXd sf = model.evaluate_batch(column(sx), record.trace.theta);
  record.spectrum = fourier_transform_numeric(
      std::span<const double>(sf.data(), static_cast<std::size_t>(sf.rows())),
      frequency_grid(config.analysis.nu_max, config.analysis.nu_step));

  record.test_mse = test_mse(model, record.trace.theta, target, config.analysis.test_points);
  return record;
}

ExperimentConfig with_alpha(const ExperimentConfig& config, double alpha) {
  ExperimentConfig c = config;
  if (!c.model.bosonic()) throw ValidationError("model.variant", "alpha sweeps need a bosonic model");
  for (auto& a : c.model.alpha) a = alpha;
  if (alpha > 3.0) {
    for (int& cutoff : c.model.cutoffs) cutoff = std::max(cutoff, kHighAlphaCutoff);
  }
  return c;
}

ExperimentConfig with_sample_size(const ExperimentConfig& config, int size) {
  ExperimentConfig c = config;
  c.dataset.size = size;
  return c;
}

void parallel_for(std::size_t count, int jobs, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(count, static_cast<std::size_t>(std::max(jobs, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          task(i);
        } catch (...) {
          const std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<SweepPoint> sweep_sample_size(const ExperimentConfig& config,
                                          std::span<const int> sizes, int jobs) {
  std::vector<SweepPoint> points(sizes.size());
  parallel_for(sizes.size(), jobs, [&](std::size_t i) {
    points[i] = SweepPoint{static_cast<double>(sizes[i]), train(with_sample_size(config, sizes[i]))};
  });
  return points;
}

std::vector<SweepPoint> sweep_alpha(const ExperimentConfig& config,
                                    std::span<const double> alphas, int jobs) {
  std::vector<SweepPoint> points(alphas.size());
  parallel_for(alphas.size(), jobs, [&](std::size_t i) {
    points[i] = SweepPoint{alphas[i], train(with_alpha(config, alphas[i]))};
  });
  return points;
}

}  // namespace kpoqml
