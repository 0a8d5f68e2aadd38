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

#include "kpoqml/qubit_baseline.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "kpoqml/dynamics.hpp"
#include "kpoqml/error.hpp"
#include "kpoqml/rng.hpp"

namespace kpoqml {

namespace {

ComplexMatrix kron_all(const std::vector<Eigen::Matrix2cd>& factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) {
    ComplexMatrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
      for (Eigen::Index j = 0; j < out.cols(); ++j) {
        next.block<2, 2>(2 * i, 2 * j) = out(i, j) * f;
      }
    }
    out = std::move(next);
  }
  return out;
}

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxBaselineQubits) {
    throw ValidationError("num_qubits", "must be in [1, " +
                                            std::to_string(kMaxBaselineQubits) + "]");
  }
}

Eigen::Matrix2cd pauli(PauliAxis axis) {
  Eigen::Matrix2cd p;
  switch (axis) {
    case PauliAxis::kX: p << 0, 1, 1, 0; break;
    case PauliAxis::kY: p << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case PauliAxis::kZ: p << 1, 0, 0, -1; break;
  }
  return p;
}

Eigen::Matrix2cd encoding_gate(double x) {
  return single_qubit_rotation(PauliAxis::kZ, std::acos(x * x)) *
         single_qubit_rotation(PauliAxis::kY, std::asin(x));
}

}  // namespace

void BaselineConfig::validate() const {
  check_qubit_count(num_qubits);
  if (depth < 0) throw ValidationError("depth", "must be non-negative");
  if (!std::isfinite(tau)) throw ValidationError("tau", "must be finite");
}

IsingCoefficients draw_ising_coefficients(int num_qubits, std::uint64_t seed) {
  check_qubit_count(num_qubits);
  CounterRng rng(seed, kIsingStream);
  IsingCoefficients c{Eigen::VectorXd(num_qubits),
                      Eigen::MatrixXd::Zero(num_qubits, num_qubits)};
  for (int j = 0; j < num_qubits; ++j) c.field(j) = rng.uniform(-1.0, 1.0);
  for (int j = 1; j < num_qubits; ++j) {
    for (int k = 0; k < j; ++k) c.coupling(j, k) = rng.uniform(-1.0, 1.0);
  }
  return c;
}

CompositeSpace qubit_space(int num_qubits) {
  check_qubit_count(num_qubits);
  return CompositeSpace(std::vector<ModeSpace>(num_qubits, ModeSpace(2)));
}

Eigen::Matrix2cd single_qubit_rotation(PauliAxis axis, double angle) {
  const double c = std::cos(0.5 * angle);
  const double s = std::sin(0.5 * angle);
  return c * Eigen::Matrix2cd::Identity() - Complex(0.0, s) * pauli(axis);
}

OperatorMatrix rotation_gate(PauliAxis axis, double angle, int qubit, int num_qubits) {
  const CompositeSpace space = qubit_space(num_qubits);
  if (qubit < 0 || qubit >= num_qubits) {
    throw ValidationError("qubit", "index " + std::to_string(qubit) + " out of range");
  }
  std::vector<Eigen::Matrix2cd> factors(num_qubits, Eigen::Matrix2cd::Identity());
  factors[qubit] = single_qubit_rotation(axis, angle);
  return OperatorMatrix(space, kron_all(factors), {.unitary = true});
}

OperatorMatrix encode_input_qubits(double x, int num_qubits) {
  if (!(std::abs(x) <= 1.0)) throw ValidationError("x", "must lie in [-1, 1]");
  const CompositeSpace space = qubit_space(num_qubits);
  const std::vector<Eigen::Matrix2cd> factors(num_qubits, encoding_gate(x));
  return OperatorMatrix(space, kron_all(factors), {.unitary = true});
}

OperatorMatrix parameterized_layer(std::span<const double> theta_layer, int num_qubits) {
  const CompositeSpace space = qubit_space(num_qubits);
  if (theta_layer.size() != 3 * static_cast<std::size_t>(num_qubits)) {
    throw ValidationError("theta", "layer needs " + std::to_string(3 * num_qubits) +
                                       " angles, got " + std::to_string(theta_layer.size()));
  }
  std::vector<Eigen::Matrix2cd> factors;
  factors.reserve(num_qubits);
  for (int j = 0; j < num_qubits; ++j) {
    factors.push_back(single_qubit_rotation(PauliAxis::kX, theta_layer[3 * j]) *
                      single_qubit_rotation(PauliAxis::kZ, theta_layer[3 * j + 1]) *
                      single_qubit_rotation(PauliAxis::kX, theta_layer[3 * j + 2]));
  }
  return OperatorMatrix(space, kron_all(factors), {.unitary = true});
}

OperatorMatrix ising_hamiltonian(const IsingCoefficients& coeffs) {
  const int k = static_cast<int>(coeffs.field.size());
  const CompositeSpace space = qubit_space(k);
  if (coeffs.coupling.rows() != k || coeffs.coupling.cols() != k) {
    throw DimensionError("Ising coupling must be " + std::to_string(k) + "x" + std::to_string(k));
  }
  const Eigen::Index dim = space.dim();
  ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
  for (int j = 0; j < k; ++j) {
    std::vector<Eigen::Matrix2cd> factors(k, Eigen::Matrix2cd::Identity());
    factors[j] = pauli(PauliAxis::kX);
    h += coeffs.field(j) * kron_all(factors);
  }
  // Z_j Z_k is diagonal: +1 when the two bits agree.
  for (Eigen::Index b = 0; b < dim; ++b) {
    double zz = 0.0;
    for (int j = 1; j < k; ++j) {
      for (int l = 0; l < j; ++l) {
        const int bj = space.occupation(b, j);
        const int bl = space.occupation(b, l);
        zz += coeffs.coupling(j, l) * (bj == bl ? 1.0 : -1.0);
      }
    }
    h(b, b) += zz;
  }
  return OperatorMatrix(space, std::move(h), {.hermitian = true});
}

OperatorMatrix ising_evolution(const IsingCoefficients& coeffs, double tau) {
  return evolve_unitary(ising_hamiltonian(coeffs), tau);
}

QubitBaseline::QubitBaseline(BaselineConfig config)
    : QubitBaseline(config, draw_ising_coefficients(config.num_qubits, config.seed)) {}

QubitBaseline::QubitBaseline(BaselineConfig config, IsingCoefficients coeffs)
    : config_(config), coeffs_(std::move(coeffs)), space_(qubit_space(config.num_qubits)) {
  config_.validate();
  if (coeffs_.field.size() != config_.num_qubits) {
    throw DimensionError("Ising coefficients do not match the qubit count");
  }
  evolution_ = ising_evolution(coeffs_, config_.tau).matrix();
  observable_.resize(space_.dim());
  for (Eigen::Index b = 0; b < space_.dim(); ++b) {
    observable_(b) = space_.occupation(b, 0) == 0 ? 2.0 : -2.0;
  }
}

OperatorMatrix QubitBaseline::circuit(std::span<const double> theta) const {
  if (theta.size() != config_.num_params()) {
    throw ValidationError("theta", "expected " + std::to_string(config_.num_params()) +
                                       " parameters, got " + std::to_string(theta.size()));
  }
  const std::size_t block = 3 * static_cast<std::size_t>(config_.num_qubits);
  ComplexMatrix v = ComplexMatrix::Identity(space_.dim(), space_.dim());
  for (int i = 0; i < config_.depth; ++i) {
    const OperatorMatrix layer =
        parameterized_layer(theta.subspan(block * i, block), config_.num_qubits);
    v = evolution_ * (layer.matrix() * v);
  }
  return OperatorMatrix(space_, std::move(v), {.unitary = true});
}

StateVector QubitBaseline::encoded_state(double x) const {
  if (!(std::abs(x) <= 1.0)) throw ValidationError("x", "must lie in [-1, 1]");
  const Eigen::Vector2cd single = encoding_gate(x).col(0);
  ComplexVector amps = ComplexVector::Ones(1);
  for (int j = 0; j < config_.num_qubits; ++j) {
    ComplexVector next(amps.size() * 2);
    for (Eigen::Index i = 0; i < amps.size(); ++i) next.segment<2>(2 * i) = amps(i) * single;
    amps = std::move(next);
  }
  return StateVector(space_, std::move(amps));
}

double QubitBaseline::evaluate(double x, std::span<const double> theta) const {
  const ComplexVector phi = circuit(theta).matrix() * encoded_state(x).amplitudes();
  return phi.cwiseAbs2().dot(observable_);
}

double baseline_model(double x, std::span<const double> theta, const BaselineConfig& config) {
  return QubitBaseline(config).evaluate(x, theta);
}

}  // namespace kpoqml
