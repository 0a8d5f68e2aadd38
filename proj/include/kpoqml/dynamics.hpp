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

// Kerr parametric oscillator (KPO) dynamics on truncated Fock spaces.
//
// Single-mode Hamiltonian:
//   H = chi a^dag^2 a^2 + delta a^dag a - p (a^2 + a^dag^2) + r (a + a^dag)
// Network Hamiltonian: sum of single-mode terms plus hopping
//   sum_{j > j'} (J_{jj'} a^dag_j a_{j'} + conj(J_{jj'}) a^dag_{j'} a_j).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "kpoqml/fock.hpp"

namespace kpoqml {

struct SingleKpoParams {
  double chi = 0.0;
  double delta = 0.0;
  double pump = 0.0;
  double drive = 0.0;
};

struct NetworkParams {
  std::vector<SingleKpoParams> modes;
  // K x K; only the strictly lower triangle (j > j') is read.
  ComplexMatrix coupling;
};

enum class Control { kDetuning = 0, kPump = 1, kDrive = 2 };

/// Maps a flat parameter vector onto (layer, mode, control) triples. Each
/// layer occupies a block of 3K entries ordered as
///   (delta_1..delta_K, p_1..p_K, r_1..r_K),
/// which for K = 1 is the familiar (delta_i, p_i, r_i) triple per layer.
class ThetaLayout {
 public:
  struct Slot {
    int layer;
    int mode;
    Control control;
  };

  ThetaLayout(int layers, int modes);

  int layers() const noexcept { return layers_; }
  int modes() const noexcept { return modes_; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(3 * layers_ * modes_);
  }
  std::size_t index(int layer, int mode, Control control) const;
  Slot slot(std::size_t index) const;

 private:
  int layers_;
  int modes_;
};

/// Data-encoding constants: the dimensionless Kerr phase chi_tilde = t_d chi
/// and the encoding duration t_d.
struct EncodingParams {
  double chi_tilde = 0.0;
  double duration = 0.0;
};

/// Fixed (non-trainable) constants of a KPO circuit.
struct CircuitConstants {
  std::vector<double> kerr;  // chi_j
  ComplexMatrix coupling;    // J, K x K, strictly lower triangle used
};

/// Eigendecomposition H = Q diag(lambda) Q^dagger of a Hermitian operator,
/// reusable for propagators at any duration.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const OperatorMatrix& h);

  const Eigen::VectorXd& eigenvalues() const noexcept { return eigenvalues_; }
  const ComplexMatrix& eigenvectors() const noexcept { return eigenvectors_; }

  // exp(-i tau H)
  OperatorMatrix propagator(double tau) const;

 private:
  CompositeSpace space_;
  Eigen::VectorXd eigenvalues_;
  ComplexMatrix eigenvectors_;
};

/// Precomputed operator terms of the network Hamiltonian on one composite
/// space; evaluating H for new control values is then a linear combination.
class KpoHamiltonian {
 public:
  KpoHamiltonian(CircuitConstants constants, CompositeSpace space);

  const CompositeSpace& space() const noexcept { return space_; }
  std::size_t num_modes() const noexcept { return space_.num_modes(); }

  // Controls are laid out as one layer block: (delta_1..K, p_1..K, r_1..K).
  OperatorMatrix at(std::span<const double> controls) const;

 private:
  CircuitConstants constants_;
  CompositeSpace space_;
  ComplexMatrix fixed_;  // Kerr + hopping
  std::vector<ComplexMatrix> number_;
  std::vector<ComplexMatrix> squeeze_;     // a^2 + a^dag^2
  std::vector<ComplexMatrix> quadrature_;  // a + a^dag
};

OperatorMatrix build_single_hamiltonian(const SingleKpoParams& params,
                                        const ModeSpace& space);
OperatorMatrix build_network_hamiltonian(const NetworkParams& params,
                                         const CompositeSpace& space);

/// exp(-i tau H) via Hermitian eigendecomposition. Real symmetric inputs take
/// a real eigensolver path. Throws ValidationError unless `h` is flagged
/// Hermitian and passes a 1e-12 hermiticity check.
OperatorMatrix evolve_unitary(const OperatorMatrix& h, double tau);

/// Diagonal of exp(-i chi_tilde n^2 - i pi x n) on one mode.
ComplexVector encoding_phases(double x, double chi_tilde, int cutoff);

OperatorMatrix encode_input_single(double x, const EncodingParams& enc,
                                   const ModeSpace& space);

/// Product of per-mode encoders exp(-i chi_tilde n_j^2 - i pi x_k n_j), one
/// input per listed mode, identity on the others.
OperatorMatrix encode_input_network(std::span<const double> x,
                                    const EncodingParams& enc,
                                    const CompositeSpace& space,
                                    std::span<const std::size_t> target_modes);

/// Variational circuit V(theta) = V_D ... V_2 V_1, V_i = exp(-i tau H_i);
/// V_1 acts first on the state.
class LayeredCircuit {
 public:
  LayeredCircuit(ThetaLayout layout, CircuitConstants constants, double tau,
                 CompositeSpace space);

  const ThetaLayout& layout() const noexcept { return layout_; }
  const CompositeSpace& space() const noexcept { return hamiltonian_.space(); }
  double tau() const noexcept { return tau_; }

  OperatorMatrix unitary(std::span<const double> theta) const;
  OperatorMatrix layer_unitary(std::span<const double> theta, int layer) const;

 private:
  ThetaLayout layout_;
  KpoHamiltonian hamiltonian_;
  double tau_;
};

OperatorMatrix layered_circuit(std::span<const double> theta,
                               const ThetaLayout& layout,
                               const CircuitConstants& constants, double tau,
                               const CompositeSpace& space);

struct AdiabaticSchedule {
  double chi = 0.1;
  double pump_final = 0.4;
  double drive = -0.01;          // small negative coherent drive
  double detuning_initial = 0.5;  // must exceed chi
  double total_time = 800.0;
  int num_steps = 1600;
};

struct AdiabaticResult {
  StateVector state;
  // |<sqrt(p/chi)|psi(T)>|^2
  double fidelity;
  // (t, fidelity) after every step, starting with t = 0.
  std::vector<std::pair<double, double>> trace;
};

/// Linear sweep from the vacuum regime (delta = detuning_initial, p = 0) to
/// the degenerate regime (delta = 0, p = pump_final) with the coherent drive
/// held fixed, using piecewise-constant steps evaluated at step midpoints.
AdiabaticResult adiabatic_prepare(const AdiabaticSchedule& schedule,
                                  const ModeSpace& space);

}  // namespace kpoqml
