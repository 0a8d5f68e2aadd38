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
#include <numbers>
#include <vector>

#include <doctest.h>

#include "kpoqml/error.hpp"
#include "kpoqml/qubit_baseline.hpp"
#include "kpoqml/rng.hpp"
#include "oracles.hpp"

using namespace kpoqml;
using kpoqml::testing::max_abs;
using std::numbers::pi;

namespace {

Eigen::Matrix2cd pauli_x() {
  Eigen::Matrix2cd p;
  p << 0, 1, 1, 0;
  return p;
}
Eigen::Matrix2cd pauli_y() {
  Eigen::Matrix2cd p;
  p << 0, Complex(0, -1), Complex(0, 1), 0;
  return p;
}
Eigen::Matrix2cd pauli_z() {
  Eigen::Matrix2cd p;
  p << 1, 0, 0, -1;
  return p;
}

// Kronecker product with qubit 0 as the slowest index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix on_qubit(const ComplexMatrix& g, int q, int k) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (int j = 0; j < k; ++j) out = kron(out, j == q ? g : ComplexMatrix::Identity(2, 2));
  return out;
}

// exp(-i angle P / 2) from the Taylor oracle.
ComplexMatrix rotation_oracle(const Eigen::Matrix2cd& p, double angle) {
  return kpoqml::testing::taylor_expm(p, angle / 2.0);
}

std::vector<double> random_angles(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, kThetaStream);
  std::vector<double> t(n);
  for (double& v : t) v = rng.uniform(-pi, pi);
  return t;
}

}  // namespace

TEST_CASE("parameter count") {
  CHECK(BaselineConfig{}.num_params() == 36);
  CHECK(BaselineConfig{3, 4, 1.0, 0}.num_params() == 36);
}

TEST_CASE("rotation gates") {
  CHECK(max_abs(rotation_gate(PauliAxis::kX, 0.0, 1, 3).matrix() - ComplexMatrix::Identity(8, 8)) <= 1e-15);
  const ComplexMatrix rx2pi = single_qubit_rotation(PauliAxis::kX, 2 * pi);
  CHECK(max_abs(rx2pi + ComplexMatrix::Identity(2, 2)) <= 1e-15);
  const ComplexMatrix rz = single_qubit_rotation(PauliAxis::kZ, pi);
  CHECK(std::abs(rz(0, 0) - std::exp(Complex(0, -pi / 2))) <= 1e-15);
  CHECK(std::abs(rz(1, 0)) == 0.0);
  for (double angle : {0.3, -1.7, 2.9}) {
    CHECK(max_abs(ComplexMatrix(single_qubit_rotation(PauliAxis::kX, angle)) - rotation_oracle(pauli_x(), angle)) <= 1e-13);
    CHECK(max_abs(ComplexMatrix(single_qubit_rotation(PauliAxis::kY, angle)) - rotation_oracle(pauli_y(), angle)) <= 1e-13);
    CHECK(max_abs(ComplexMatrix(single_qubit_rotation(PauliAxis::kZ, angle)) - rotation_oracle(pauli_z(), angle)) <= 1e-13);
  }
  const OperatorMatrix g = rotation_gate(PauliAxis::kY, 0.8, 2, 4);
  CHECK(max_abs(g.matrix() - on_qubit(rotation_oracle(pauli_y(), 0.8), 2, 4)) <= 1e-13);
  CHECK_THROWS_AS(rotation_gate(PauliAxis::kX, 1.0, 4, 4), ValidationError);
}

TEST_CASE("input encoding") {
  const int k = 3;
  SUBCASE("x = 1 applies only RY(pi/2)") {
    const ComplexMatrix ry = single_qubit_rotation(PauliAxis::kY, pi / 2);
    ComplexMatrix expected = ComplexMatrix::Identity(1, 1);
    for (int j = 0; j < k; ++j) expected = kron(expected, ry);
    CHECK(max_abs(encode_input_qubits(1.0, k).matrix() - expected) <= 1e-15);
  }
  SUBCASE("x = 0 applies only RZ(pi/2)") {
    const ComplexMatrix rz = single_qubit_rotation(PauliAxis::kZ, pi / 2);
    ComplexMatrix expected = ComplexMatrix::Identity(1, 1);
    for (int j = 0; j < k; ++j) expected = kron(expected, rz);
    CHECK(max_abs(encode_input_qubits(0.0, k).matrix() - expected) <= 1e-15);
  }
  SUBCASE("RY acts before RZ") {
    const double x = 0.37;
    const ComplexMatrix g =
        rotation_oracle(pauli_z(), std::acos(x * x)) * rotation_oracle(pauli_y(), std::asin(x));
    CHECK(max_abs(encode_input_qubits(x, 1).matrix() - g) <= 1e-13);
    const OperatorMatrix u = encode_input_qubits(x, 6);
    CHECK(u.unitarity_defect() <= 1e-12);
  }
  CHECK_THROWS_AS(encode_input_qubits(1.01, 2), ValidationError);
}

TEST_CASE("parameterized layer") {
  const std::vector<double> zeros(9, 0.0);
  CHECK(max_abs(parameterized_layer(zeros, 3).matrix() - ComplexMatrix::Identity(8, 8)) <= 1e-15);
  const std::vector<double> first{pi, 0.0, 0.0};
  CHECK(max_abs(parameterized_layer(first, 1).matrix() -
                ComplexMatrix(single_qubit_rotation(PauliAxis::kX, pi))) <= 1e-15);

  const std::vector<double> t = random_angles(6, 1);
  ComplexMatrix expected = ComplexMatrix::Identity(4, 4);
  for (int j = 0; j < 2; ++j) {
    const ComplexMatrix f = rotation_oracle(pauli_x(), t[3 * j]) * rotation_oracle(pauli_z(), t[3 * j + 1]) *
                            rotation_oracle(pauli_x(), t[3 * j + 2]);
    expected = on_qubit(f, j, 2) * expected;
  }
  CHECK(max_abs(parameterized_layer(t, 2).matrix() - expected) <= 1e-13);
  CHECK_THROWS_AS(parameterized_layer(t, 3), ValidationError);
}

TEST_CASE("Ising coefficients and evolution") {
  const IsingCoefficients c = draw_ising_coefficients(6, 42);
  const IsingCoefficients again = draw_ising_coefficients(6, 42);
  CHECK(c.field == again.field);
  CHECK(c.coupling == again.coupling);
  CHECK(c.field.cwiseAbs().maxCoeff() <= 1.0);
  CHECK(c.coupling.cwiseAbs().maxCoeff() <= 1.0);
  for (int j = 0; j < 6; ++j) {
    for (int k = j; k < 6; ++k) CHECK(c.coupling(j, k) == 0.0);
  }
  CHECK(draw_ising_coefficients(6, 43).field != c.field);

  SUBCASE("zero coefficients give the identity") {
    const IsingCoefficients z{Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3)};
    CHECK(max_abs(ising_evolution(z, 10.0).matrix() - ComplexMatrix::Identity(8, 8)) <= 1e-14);
  }
  SUBCASE("single-qubit field") {
    const IsingCoefficients one{Eigen::VectorXd::Ones(1), Eigen::MatrixXd::Zero(1, 1)};
    const ComplexMatrix expected = Complex(0, -1) * ComplexMatrix(pauli_x());
    CHECK(max_abs(ising_evolution(one, pi / 2).matrix() - expected) <= 1e-14);
  }
  SUBCASE("two qubits match the Taylor oracle") {
    const IsingCoefficients two = draw_ising_coefficients(2, 5);
    const ComplexMatrix h = two.field(0) * on_qubit(pauli_x(), 0, 2) + two.field(1) * on_qubit(pauli_x(), 1, 2) +
                            two.coupling(1, 0) * on_qubit(pauli_z(), 1, 2) * on_qubit(pauli_z(), 0, 2);
    CHECK(max_abs(ising_hamiltonian(two).matrix() - h) <= 1e-15);
    CHECK(max_abs(ising_evolution(two, 10.0).matrix() - kpoqml::testing::taylor_expm(h, 10.0)) <= 1e-9);
  }
}

TEST_CASE("baseline model") {
  SUBCASE("trivial circuit, x = 1") {
    const BaselineConfig cfg{6, 2, 10.0, 0};
    const IsingCoefficients zero{Eigen::VectorXd::Zero(6), Eigen::MatrixXd::Zero(6, 6)};
    const QubitBaseline model(cfg, zero);
    const std::vector<double> theta(36, 0.0);
    CHECK(std::abs(model.evaluate(1.0, theta)) <= 1e-12);
    // <Z> after RZ(arccos x^2) RY(arcsin x) is cos(arcsin x) = sqrt(1 - x^2).
    CHECK(model.evaluate(0.6, theta) == doctest::Approx(2.0 * 0.8).epsilon(1e-12));
  }
  SUBCASE("agrees with a dense oracle") {
    const BaselineConfig cfg{3, 2, 10.0, 7};
    const std::vector<double> theta = random_angles(18, 2);
    const IsingCoefficients c = draw_ising_coefficients(3, 7);
    const ComplexMatrix e = ising_evolution(c, 10.0).matrix();
    ComplexMatrix v = ComplexMatrix::Identity(8, 8);
    for (int layer = 0; layer < 2; ++layer) {
      const std::vector<double> block(theta.begin() + 9 * layer, theta.begin() + 9 * (layer + 1));
      v = e * parameterized_layer(block, 3).matrix() * v;
    }
    const double x = -0.45;
    ComplexVector psi = ComplexVector::Zero(8);
    psi(0) = 1.0;
    psi = v * encode_input_qubits(x, 3).matrix() * psi;
    const ComplexMatrix z0 = 2.0 * on_qubit(pauli_z(), 0, 3);
    const double expected = psi.dot(z0 * psi).real();
    CHECK(baseline_model(x, theta, cfg) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("output is bounded by two") {
    const QubitBaseline model(BaselineConfig{});
    for (std::uint64_t s = 0; s < 5; ++s) {
      const std::vector<double> theta = random_angles(36, s);
      for (double x : {-1.0, -0.3, 0.2, 0.9}) CHECK(std::abs(model.evaluate(x, theta)) <= 2.0 + 1e-12);
    }
    CHECK(model.circuit(random_angles(36, 9)).unitarity_defect() <= 1e-12);
  }
  SUBCASE("without layers the output ignores other qubits") {
    const IsingCoefficients c = draw_ising_coefficients(4, 1);
    const QubitBaseline model(BaselineConfig{4, 0, 10.0, 1}, c);
    const std::vector<double> none;
    for (double x : {-0.7, 0.1, 0.5}) {
      CHECK(model.evaluate(x, none) == doctest::Approx(2.0 * std::sqrt(1.0 - x * x)).epsilon(1e-12));
    }
  }
  SUBCASE("limits") {
    CHECK_THROWS_AS(BaselineConfig({13, 2, 10.0, 0}).validate(), ValidationError);
    const std::vector<double> theta(35, 0.0);
    CHECK_THROWS_AS(baseline_model(0.1, theta, BaselineConfig{}), ValidationError);
    const std::vector<double> full(36, 0.0);
    CHECK_THROWS_AS(baseline_model(1.5, full, BaselineConfig{}), ValidationError);
  }
}
