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
#include "kpoqml/model.hpp"
#include "kpoqml/rng.hpp"

using namespace kpoqml;
using std::numbers::pi;

namespace {

std::vector<double> random_theta(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, kThetaStream);
  std::vector<double> t(n);
  for (double& v : t) v = rng.uniform(-1.0, 1.0);
  return t;
}

// Single KPO with no Kerr term anywhere, so theta = 0 is the identity circuit.
ModelSpec linear_single(double alpha) {
  ModelSpec s = ModelSpec::single_kpo();
  s.kerr = {0.0};
  s.encoding = {0.0, 0.7};
  s.alpha = {alpha};
  s.max_truncation_deficit = 1e-6;
  return s;
}

double eval1(const Model& m, double x, std::span<const double> theta) {
  const double in[] = {x};
  return m.evaluate(in, theta).at(0);
}

}  // namespace

TEST_CASE("reference specs expose 36 parameters") {
  CHECK(ModelSpec::single_kpo().num_params() == 36);
  CHECK(ModelSpec::kpo_network().num_params() == 36);
  CHECK(ModelSpec::qubit_baseline().num_params() == 36);
  CHECK(ModelSpec::multi_input_single_kpo().num_params() == 36);
}

TEST_CASE("spec validation names the field") {
  ModelSpec s = ModelSpec::single_kpo();
  s.cutoffs = {25, 25};
  try {
    s.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.field().rfind("model.", 0) == 0);
  }
  ModelSpec n = ModelSpec::kpo_network();
  n.encode_modes = {0, 5};
  CHECK_THROWS_AS(n.validate(), ValidationError);
  ModelSpec b = ModelSpec::qubit_baseline();
  b.baseline.num_qubits = 13;
  CHECK_THROWS_AS(b.validate(), ValidationError);
}

TEST_CASE("free rotation of a coherent state") {
  // With chi = 0 and theta = 0, U(x) rotates alpha to alpha exp(-i pi x).
  const Model m(linear_single(1.0));
  const std::vector<double> zeros(36, 0.0);
  CHECK(eval1(m, 0.0, zeros) == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(eval1(m, 0.5, zeros)) <= 1e-10);
  for (double x : {-0.9, -0.3, 0.2, 0.77}) {
    CHECK(eval1(m, x, zeros) == doctest::Approx(2.0 * std::cos(pi * x)).epsilon(1e-10));
  }
}

TEST_CASE("network product rule") {
  ModelSpec s = ModelSpec::kpo_network();
  s.kerr = {0.0, 0.0};
  s.coupling = ComplexMatrix::Zero(2, 2);
  s.encoding = {0.0, 1.0};
  const Model m(s);
  const std::vector<double> zeros(36, 0.0);
  // Cutoff 10 clips the unit-amplitude coherent state at the 1e-6 level.
  CHECK(eval1(m, 0.0, zeros) == doctest::Approx(4.0).epsilon(1e-5));
  for (double x : {-0.6, 0.15, 0.4}) {
    const double single = 2.0 * std::cos(pi * x);
    CHECK(eval1(m, x, zeros) == doctest::Approx(single * single).epsilon(1e-5));
  }

  // Product equals the product of the separately computed expectations.
  const Model full(ModelSpec::kpo_network());
  const std::vector<double> theta = random_theta(36, 3);
  Eigen::MatrixXd inputs(3, 1);
  inputs << -0.5, 0.1, 0.8;
  const Eigen::MatrixXd e = full.expectations(full.encode_batch(inputs), theta);
  const Eigen::MatrixXd f = full.evaluate_batch(inputs, theta);
  for (int i = 0; i < 3; ++i) CHECK(f(i, 0) == e(i, 0) * e(i, 1));
}

TEST_CASE("evaluation is real and unit-norm preserving") {
  const Model m(ModelSpec::single_kpo());
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const std::vector<double> theta = random_theta(36, seed);
    CHECK(m.circuit(theta).unitarity_defect() <= 1e-10);
    for (double x : {-1.0, -0.2, 0.6}) {
      const double in[] = {x};
      const StateVector s = apply(m.circuit(theta), m.encoded_state(in));
      CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("global phase of the initial state does not matter") {
  const Model m(ModelSpec::single_kpo());
  const std::vector<double> theta = random_theta(36, 8);
  const double in[] = {0.3};
  const StateVector s = m.encoded_state(in);
  const StateVector t(s.space(), std::polar(1.0, 1.234) * s.amplitudes());
  const OperatorMatrix v = m.circuit(theta);
  const OperatorMatrix q(s.space(), m.observable_matrix(0), {.hermitian = true});
  CHECK(expectation_real(apply(v, t), q) == doctest::Approx(expectation_real(apply(v, s), q)).epsilon(1e-13));
}

TEST_CASE("mse cost") {
  const Model m(linear_single(1.0));
  const std::vector<double> zeros(36, 0.0);
  Dataset d;
  d.inputs.resize(4, 1);
  d.labels.resize(4, 1);
  d.inputs << -0.7, -0.1, 0.35, 0.9;
  for (int i = 0; i < 4; ++i) d.labels(i, 0) = 2.0 * std::cos(pi * d.inputs(i, 0));
  CHECK(mse_cost(zeros, d, m) <= 1e-20);

  // A vacuum start gives f = 0 everywhere.
  const Model vacuum(linear_single(0.0));
  d.labels.setOnes();
  CHECK(mse_cost(zeros, d, vacuum) == doctest::Approx(1.0).epsilon(1e-14));
  for (double x : {-1.0, 0.0, 0.5}) CHECK(eval1(vacuum, x, zeros) == 0.0);

  const Model reference(ModelSpec::single_kpo());
  const CostFunction cost(reference, d);
  CHECK(cost(random_theta(36, 1)) >= 0.0);
  Dataset empty;
  empty.inputs.resize(0, 1);
  empty.labels.resize(0, 1);
  CHECK_THROWS_AS(mse_cost(zeros, empty, m), ValidationError);
}

TEST_CASE("Fourier series coefficients") {
  SUBCASE("identity circuit") {
    const Model m(linear_single(1.0));
    const std::vector<double> zeros(36, 0.0);
    const FourierCoefficients c = fourier_series_coefficients(zeros, m);
    CHECK(std::abs(c.at(1) - Complex(1.0)) <= 1e-10);
    CHECK(std::abs(c.at(-1) - Complex(1.0)) <= 1e-10);
    for (const auto& [k, v] : c.terms) {
      if (std::abs(k) != 1) CHECK(std::abs(v) <= 1e-14);
    }
  }
  SUBCASE("reconstruction matches direct evaluation") {
    ModelSpec s = ModelSpec::single_kpo();
    s.encoding.chi_tilde = 0.0;
    const Model m(s);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const std::vector<double> theta = random_theta(36, seed);
      const FourierCoefficients c = fourier_series_coefficients(theta, m);
      double worst = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double x = -1.0 + 2.0 * i / 100.0;
        worst = std::max(worst, std::abs(c.evaluate(x) - eval1(m, x, theta)));
      }
      CHECK(worst <= 1e-8);
      for (const auto& [k, v] : c.terms) {
        CHECK(std::abs(c.at(-k) - std::conj(v)) <= 1e-12);
        CHECK(std::abs(k) <= 24);
      }
    }
  }
  SUBCASE("preconditions") {
    const std::vector<double> theta(36, 0.0);
    CHECK_THROWS_AS(fourier_series_coefficients(theta, Model(ModelSpec::single_kpo())), ValidationError);
    CHECK_THROWS_AS(fourier_series_coefficients(theta, Model(ModelSpec::kpo_network())), ValidationError);
  }
}

TEST_CASE("two-input encoding") {
  CHECK(two_input_phase(1.0, 0.0) == 0.0);
  CHECK(two_input_phase(0.0, 1.0) == doctest::Approx(pi / 2));
  CHECK(two_input_phase(0.0, -1.0) == doctest::Approx(-pi / 2));
  CHECK(two_input_phase(0.0, 0.0) == 0.0);
  CHECK(two_input_phase(-1.0, 0.0) == doctest::Approx(-pi));

  const ModeSpace m(25);
  const EncodingParams enc{0.07, 0.7};
  const StateVector origin = encode_two_inputs_single_kpo(0.0, 0.0, enc, m);
  CHECK(std::abs(origin[0] - Complex(1.0)) <= 1e-15);

  // e^{-i phi n}|r> is the coherent state r e^{-i phi}.
  const StateVector s = encode_two_inputs_single_kpo(0.0, 1.0, {0.0, 0.7}, m);
  const StateVector expected = coherent_state(std::polar(1.0, -pi / 2), m);
  CHECK(std::abs(overlap(expected, s)) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(std::abs(overlap_closed_form(0.3, -0.4, 0.3, -0.4) - Complex(1.0)) <= 1e-15);
  const double pts[][4] = {{0.6, 0.8, 0.8, -0.6}, {0.1, -0.9, -0.5, 0.2}, {0.0, 0.0, 0.7, 0.7}};
  for (const auto& p : pts) {
    const StateVector a = encode_two_inputs_single_kpo(p[0], p[1], enc, m);
    const StateVector b = encode_two_inputs_single_kpo(p[2], p[3], enc, m);
    CHECK(std::abs(overlap(b, a) - overlap_closed_form(p[0], p[1], p[2], p[3])) <= 1e-8);
    CHECK(std::abs(overlap_closed_form(p[0], p[1], p[2], p[3])) < 1.0);
  }

  const Model model(ModelSpec::multi_input_single_kpo());
  const double in[] = {0.4, -0.3};
  const std::vector<double> out = model.evaluate(in, random_theta(36, 2));
  CHECK(out.size() == 2);
  CHECK(out[1] >= 0.0);
}

TEST_CASE("photon number profile") {
  const std::vector<double> grid{-1.0, -0.5, 0.0, 0.5, 1.0};
  const std::vector<double> zeros(36, 0.0);
  ModelSpec s = ModelSpec::single_kpo();
  s.encoding.chi_tilde = 0.0;
  const std::vector<double> flat = photon_number_profile(zeros, Model(s), grid);
  const double n0 = expectation_real(coherent_state(3.0, ModeSpace(25), 1e-4), number_op(ModeSpace(25)));
  for (double v : flat) CHECK(v == doctest::Approx(n0).epsilon(1e-12));
  CHECK(n0 == doctest::Approx(9.0).epsilon(1e-4));

  ModelSpec five = s;
  five.alpha = {5.0};
  five.cutoffs = {100};
  CHECK(photon_number_profile(zeros, Model(five), grid)[2] == doctest::Approx(25.0).epsilon(1e-10));

  const std::vector<double> theta = random_theta(36, 4);
  for (double v : photon_number_profile(theta, Model(ModelSpec::single_kpo()), grid)) {
    CHECK(v >= 0.0);
    CHECK(v <= 24.0);
  }
  CHECK_THROWS_AS(photon_number_profile(zeros, Model(ModelSpec::qubit_baseline()), grid), ValidationError);
}

TEST_CASE("batch evaluation matches pointwise evaluation") {
  const Model m(ModelSpec::single_kpo());
  const std::vector<double> theta = random_theta(36, 6);
  Eigen::MatrixXd inputs(4, 1);
  inputs << -0.8, -0.1, 0.3, 0.95;
  const Eigen::MatrixXd batch = m.evaluate_batch(inputs, theta);
  for (int i = 0; i < 4; ++i) CHECK(batch(i, 0) == doctest::Approx(eval1(m, inputs(i, 0), theta)).epsilon(1e-13));

  const double wrong[] = {0.1, 0.2};
  CHECK_THROWS_AS(m.evaluate(wrong, theta), DimensionError);
  CHECK_THROWS_AS(m.evaluate(std::span<const double>(wrong, 1), std::span<const double>(theta.data(), 35)),
                  ValidationError);
}
