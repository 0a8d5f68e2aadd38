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

// Conventional qubit circuit-learning baseline: per-qubit RY/RZ data encoding
// followed by D layers of (RX RZ RX rotations, then a fixed random transverse
// Ising evolution). Rotations use R_P(angle) = exp(-i angle P / 2); qubits
// start in |0...0> and qubit 0 is the slowest-varying basis index.

#include <cstddef>
#include <cstdint>
#include <span>

#include "kpoqml/fock.hpp"

namespace kpoqml {

inline constexpr int kMaxBaselineQubits = 12;

struct BaselineConfig {
  int num_qubits = 6;
  int depth = 2;
  double tau = 10.0;
  std::uint64_t seed = 0;

  std::size_t num_params() const noexcept {
    return 3 * static_cast<std::size_t>(num_qubits) * static_cast<std::size_t>(depth);
  }
  void validate() const;
};

/// H = sum_j field_j X_j + sum_{j > k} coupling(j, k) Z_j Z_k.
struct IsingCoefficients {
  Eigen::VectorXd field;
  Eigen::MatrixXd coupling;  // strictly lower triangular
};

/// Draws field_0..field_{K-1}, then coupling(j, k) for j = 1..K-1, k < j in
/// row order, all uniform on [-1, 1] from CounterRng(seed, kIsingStream).
IsingCoefficients draw_ising_coefficients(int num_qubits, std::uint64_t seed);

enum class PauliAxis { kX, kY, kZ };

CompositeSpace qubit_space(int num_qubits);

Eigen::Matrix2cd single_qubit_rotation(PauliAxis axis, double angle);
OperatorMatrix rotation_gate(PauliAxis axis, double angle, int qubit, int num_qubits);

/// prod_j RZ_j(arccos x^2) RY_j(arcsin x), RY acting first. Requires |x| <= 1.
OperatorMatrix encode_input_qubits(double x, int num_qubits);

/// prod_j RX_j(t_{j,0}) RZ_j(t_{j,1}) RX_j(t_{j,2}) with t_{j,c} =
/// theta_layer[3j + c]; the rightmost RX acts first.
OperatorMatrix parameterized_layer(std::span<const double> theta_layer, int num_qubits);

OperatorMatrix ising_hamiltonian(const IsingCoefficients& coeffs);
OperatorMatrix ising_evolution(const IsingCoefficients& coeffs, double tau);

class QubitBaseline {
 public:
  explicit QubitBaseline(BaselineConfig config);
  QubitBaseline(BaselineConfig config, IsingCoefficients coeffs);

  const BaselineConfig& config() const noexcept { return config_; }
  const IsingCoefficients& coefficients() const noexcept { return coeffs_; }
  const CompositeSpace& space() const noexcept { return space_; }

  // V(theta) = prod_{i=1..D} exp(-i tau H) L_i(theta), layer 1 acting first.
  OperatorMatrix circuit(std::span<const double> theta) const;
  StateVector encoded_state(double x) const;
  // Diagonal of the observable 2 Z on qubit 0.
  const Eigen::VectorXd& observable_diagonal() const noexcept { return observable_; }

  double evaluate(double x, std::span<const double> theta) const;

 private:
  BaselineConfig config_;
  IsingCoefficients coeffs_;
  CompositeSpace space_;
  ComplexMatrix evolution_;
  Eigen::VectorXd observable_;
};

/// f(x) = <0| U^dag(x) V^dag(theta) (2 Z_0) V(theta) U(x) |0>.
double baseline_model(double x, std::span<const double> theta, const BaselineConfig& config);

}  // namespace kpoqml
