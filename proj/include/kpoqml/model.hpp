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

// Model functions f(x; theta) = <psi| U^dag(x) V^dag(theta) M V(theta) U(x) |psi>
// for the supported variants, plus the cost and expressibility diagnostics
// built on them.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "kpoqml/dataset.hpp"
#include "kpoqml/dynamics.hpp"
#include "kpoqml/fock.hpp"
#include "kpoqml/qubit_baseline.hpp"

namespace kpoqml {

enum class Variant { kSingleKpo, kKpoNetwork, kMultiInputSingleKpo, kQubitBaseline };
enum class OutputRule { kSingle, kProduct, kVector };

std::string to_string(Variant v);
std::string to_string(OutputRule r);

struct Observable {
  enum class Kind { kQuadrature, kNumber, kPauliZ };
  Kind kind = Kind::kQuadrature;  // a_j + a_j^dag
  std::size_t target = 0;         // mode or qubit index
  double scale = 1.0;
};

std::string to_string(Observable::Kind k);

struct ModelSpec {
  Variant variant = Variant::kSingleKpo;

  // Bosonic variants.
  std::vector<double> kerr{0.1};  // chi_j, one per mode
  ComplexMatrix coupling;         // K x K strictly lower triangle; empty = uncoupled
  std::vector<int> cutoffs{25};
  std::vector<Complex> alpha{3.0};  // initial coherent amplitude per mode
  EncodingParams encoding{0.07, 0.7};
  int layers = 12;
  double tau = 0.7;
  // Network only. Empty: a scalar input is encoded identically on every mode,
  // and a d_x-dimensional input goes to modes 0..d_x-1.
  std::vector<std::size_t> encode_modes;
  int input_dim = 1;
  double max_truncation_deficit = 1e-4;

  // Qubit baseline.
  BaselineConfig baseline;

  std::vector<Observable> observables{Observable{}};
  OutputRule output = OutputRule::kSingle;

  std::size_t num_modes() const noexcept { return cutoffs.size(); }
  std::size_t num_params() const noexcept;
  std::size_t output_dim() const noexcept;
  bool bosonic() const noexcept { return variant != Variant::kQubitBaseline; }
  ThetaLayout layout() const;

  // Throws ValidationError naming the offending field.
  void validate() const;

  static ModelSpec single_kpo();
  static ModelSpec kpo_network();
  static ModelSpec multi_input_single_kpo();
  static ModelSpec qubit_baseline();
};

/// Compiled, immutable model. Safe to evaluate concurrently.
class Model {
 public:
  explicit Model(ModelSpec spec);

  const ModelSpec& spec() const noexcept { return spec_; }
  const CompositeSpace& space() const noexcept { return space_; }
  std::size_t num_params() const noexcept { return spec_.num_params(); }
  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(spec_.input_dim); }
  std::size_t output_dim() const noexcept { return spec_.output_dim(); }

  // Product coherent state |alpha_1> (x) ... (bosonic, single-input variants).
  const StateVector& initial_state() const;

  StateVector encoded_state(std::span<const double> x) const;
  // Encoded states as columns, one per row of `inputs` (N x d_x).
  ComplexMatrix encode_batch(const Eigen::MatrixXd& inputs) const;

  OperatorMatrix circuit(std::span<const double> theta) const;

  // Per-observable expectations (N x n_obs) for pre-encoded states.
  Eigen::MatrixXd expectations(const ComplexMatrix& encoded,
                               std::span<const double> theta) const;
  // Model outputs (N x d_y) for pre-encoded states.
  Eigen::MatrixXd evaluate_encoded(const ComplexMatrix& encoded,
                                   std::span<const double> theta) const;

  std::vector<double> evaluate(std::span<const double> x,
                               std::span<const double> theta) const;
  Eigen::MatrixXd evaluate_batch(const Eigen::MatrixXd& inputs,
                                 std::span<const double> theta) const;

  // <sum_j n_j> of V(theta) U(x) |init> per row of `inputs`.
  Eigen::VectorXd photon_numbers(const Eigen::MatrixXd& inputs,
                                 std::span<const double> theta) const;

  const Eigen::SparseMatrix<Complex>& observable_matrix(std::size_t k) const {
    return observables_.at(k);
  }

 private:
  Eigen::MatrixXd combine(const Eigen::MatrixXd& expectations) const;
  void check_theta(std::span<const double> theta) const;

  ModelSpec spec_;
  CompositeSpace space_;
  std::optional<StateVector> initial_;
  std::optional<LayeredCircuit> circuit_;
  std::optional<QubitBaseline> baseline_;
  std::vector<Eigen::SparseMatrix<Complex>> observables_;
  std::vector<std::size_t> encode_modes_;
};

/// Mean squared error over a fixed dataset, with the encoded input states
/// computed once. Residuals are summed in sample order.
class CostFunction {
 public:
  CostFunction(const Model& model, const Dataset& dataset);
  CostFunction(Model&&, const Dataset&) = delete;

  double operator()(std::span<const double> theta) const;
  const Model& model() const noexcept { return *model_; }

 private:
  const Model* model_;
  ComplexMatrix encoded_;
  Eigen::MatrixXd labels_;
};

double mse_cost(std::span<const double> theta, const Dataset& dataset, const Model& model);

/// Coefficients c_m of f(x) = sum_m c_m exp(i pi m x) keyed by m = k - l.
struct FourierCoefficients {
  std::map<int, Complex> terms;

  Complex at(int m) const;
  double evaluate(double x) const;
  int max_offset(double threshold) const;
};

/// Exact Fourier-series coefficients of a single-KPO model with chi_tilde = 0:
/// c_m = sum_{k - l = m} conj(c_k) <k|V^dag M V|l> c_l, where c_k are the
/// (renormalized) initial coherent amplitudes.
FourierCoefficients fourier_series_coefficients(std::span<const double> theta,
                                                const Model& model);

/// Two inputs on one KPO: coherent amplitude r = |(x1, x2)| followed by
/// exp(-i chi_tilde n^2 - i phi n), phi = +-arccos(x1 / r) with the sign of
/// x2 (x2 <= 0 takes the minus branch) and phi = 0 at r = 0.
StateVector encode_two_inputs_single_kpo(double x1, double x2, const EncodingParams& enc,
                                         const ModeSpace& space,
                                         double max_deficit = kDefaultMaxTruncationDeficit);
double two_input_phase(double x1, double x2);

/// <psi(x1', x2')|psi(x1, x2)> in closed form.
Complex overlap_closed_form(double x1, double x2, double x1p, double x2p);

std::vector<double> photon_number_profile(std::span<const double> theta, const Model& model,
                                          std::span<const double> x_grid);

}  // namespace kpoqml
