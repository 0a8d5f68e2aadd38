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

#include "kpoqml/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kpoqml/error.hpp"

namespace kpoqml {

namespace {

constexpr double kHermitianCheck = 1e-12;

// exp(-i tau H) for a Hermitian matrix. Purely real H (the common case: real
// controls and real couplings) goes through the real symmetric solver.
ComplexMatrix propagate(const ComplexMatrix& h, double tau) {
  const Complex minus_i(0.0, -1.0);
  if (h.imag().isZero(0.0)) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.real());
    if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
    const Eigen::MatrixXd& q = solver.eigenvectors();
    const Eigen::ArrayXd angle = -tau * solver.eigenvalues().array();
    const Eigen::MatrixXd qc = q * angle.cos().matrix().asDiagonal();
    const Eigen::MatrixXd qs = q * angle.sin().matrix().asDiagonal();
    ComplexMatrix u(h.rows(), h.cols());
    u.real() = qc * q.transpose();
    u.imag() = qs * q.transpose();
    return u;
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
  const ComplexMatrix& q = solver.eigenvectors();
  const ComplexVector phases = (minus_i * tau * solver.eigenvalues().cast<Complex>()).array().exp();
  return q * phases.asDiagonal() * q.adjoint();
}

void require_hermitian(const OperatorMatrix& h) {
  if (!h.hermitian()) {
    throw ValidationError("h", "operator is not flagged Hermitian");
  }
  const double defect = h.hermiticity_defect();
  if (defect > kHermitianCheck) {
    throw ValidationError("h", "hermiticity defect " + std::to_string(defect));
  }
}

// Single-mode ladder building blocks as plain matrices.
struct Ladder {
  ComplexMatrix a, n, kerr, squeeze, quadrature;

  explicit Ladder(const ModeSpace& space) {
    a = annihilation_op(space).matrix();
    n = number_op(space).matrix();
    const ComplexMatrix a2 = a * a;
    kerr = a2.adjoint() * a2;
    squeeze = a2 + a2.adjoint();
    quadrature = a + a.adjoint();
  }
};

ComplexMatrix embed_matrix(const ComplexMatrix& m, std::size_t mode,
                           const CompositeSpace& space) {
  return embed(OperatorMatrix(space.mode(mode), m), mode, space).matrix();
}

}  // namespace

ThetaLayout::ThetaLayout(int layers, int modes) : layers_(layers), modes_(modes) {
  if (layers < 1) throw ValidationError("layers", "must be positive");
  if (modes < 1) throw ValidationError("modes", "must be positive");
}

std::size_t ThetaLayout::index(int layer, int mode, Control control) const {
  if (layer < 0 || layer >= layers_ || mode < 0 || mode >= modes_) {
    throw ValidationError("theta", "layout slot out of range");
  }
  return static_cast<std::size_t>(3 * modes_ * layer +
                                  modes_ * static_cast<int>(control) + mode);
}

ThetaLayout::Slot ThetaLayout::slot(std::size_t index) const {
  if (index >= size()) throw ValidationError("theta", "index out of range");
  const int i = static_cast<int>(index);
  const int within = i % (3 * modes_);
  return Slot{i / (3 * modes_), within % modes_, static_cast<Control>(within / modes_)};
}

SpectralDecomposition::SpectralDecomposition(const OperatorMatrix& h)
    : space_(h.space()) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

OperatorMatrix SpectralDecomposition::propagator(double tau) const {
  const ComplexVector phases =
      (Complex(0.0, -tau) * eigenvalues_.cast<Complex>()).array().exp();
  return OperatorMatrix(space_, eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint(),
                        {.unitary = true});
}

KpoHamiltonian::KpoHamiltonian(CircuitConstants constants, CompositeSpace space)
    : constants_(std::move(constants)), space_(std::move(space)) {
  const std::size_t k = space_.num_modes();
  if (constants_.kerr.size() != k) {
    throw DimensionError("expected " + std::to_string(k) + " Kerr coefficients, got " +
                         std::to_string(constants_.kerr.size()));
  }
  if (constants_.coupling.size() == 0) {
    constants_.coupling = ComplexMatrix::Zero(k, k);
  }
  if (constants_.coupling.rows() != static_cast<Eigen::Index>(k) ||
      constants_.coupling.cols() != static_cast<Eigen::Index>(k)) {
    throw DimensionError("coupling matrix must be " + std::to_string(k) + "x" +
                         std::to_string(k));
  }
  const Eigen::Index dim = space_.dim();
  fixed_ = ComplexMatrix::Zero(dim, dim);
  std::vector<ComplexMatrix> lowering;
  for (std::size_t j = 0; j < k; ++j) {
    const Ladder ladder(space_.mode(j));
    fixed_ += constants_.kerr[j] * embed_matrix(ladder.kerr, j, space_);
    number_.push_back(embed_matrix(ladder.n, j, space_));
    squeeze_.push_back(embed_matrix(ladder.squeeze, j, space_));
    quadrature_.push_back(embed_matrix(ladder.quadrature, j, space_));
    lowering.push_back(embed_matrix(ladder.a, j, space_));
  }
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t jp = 0; jp < j; ++jp) {
      const Complex coupling = constants_.coupling(j, jp);
      if (coupling == Complex(0.0)) continue;
      const ComplexMatrix hop = lowering[j].adjoint() * lowering[jp];
      fixed_ += coupling * hop + std::conj(coupling) * hop.adjoint();
    }
  }
}

OperatorMatrix KpoHamiltonian::at(std::span<const double> controls) const {
  const std::size_t k = num_modes();
  if (controls.size() != 3 * k) {
    throw DimensionError("expected " + std::to_string(3 * k) + " controls, got " +
                         std::to_string(controls.size()));
  }
  ComplexMatrix h = fixed_;
  for (std::size_t j = 0; j < k; ++j) {
    h += controls[j] * number_[j];
    h -= controls[k + j] * squeeze_[j];
    h += controls[2 * k + j] * quadrature_[j];
  }
  return OperatorMatrix(space_, std::move(h), {.hermitian = true});
}

OperatorMatrix build_single_hamiltonian(const SingleKpoParams& params,
                                        const ModeSpace& space) {
  const KpoHamiltonian terms(CircuitConstants{{params.chi}, {}}, CompositeSpace(space));
  const double controls[] = {params.delta, params.pump, params.drive};
  return terms.at(controls);
}

OperatorMatrix build_network_hamiltonian(const NetworkParams& params,
                                         const CompositeSpace& space) {
  const std::size_t k = space.num_modes();
  if (params.modes.size() != k) {
    throw DimensionError("network has " + std::to_string(params.modes.size()) +
                         " modes but the space has " + std::to_string(k));
  }
  CircuitConstants constants{{}, params.coupling};
  std::vector<double> controls(3 * k);
  for (std::size_t j = 0; j < k; ++j) {
    constants.kerr.push_back(params.modes[j].chi);
    controls[j] = params.modes[j].delta;
    controls[k + j] = params.modes[j].pump;
    controls[2 * k + j] = params.modes[j].drive;
  }
  return KpoHamiltonian(std::move(constants), space).at(controls);
}

OperatorMatrix evolve_unitary(const OperatorMatrix& h, double tau) {
  require_hermitian(h);
  return OperatorMatrix(h.space(), propagate(h.matrix(), tau), {.unitary = true});
}

ComplexVector encoding_phases(double x, double chi_tilde, int cutoff) {
  ComplexVector phases(cutoff);
  for (int k = 0; k < cutoff; ++k) {
    const double kk = static_cast<double>(k);
    phases(k) = std::polar(1.0, -(chi_tilde * kk * kk + std::numbers::pi * x * kk));
  }
  return phases;
}

OperatorMatrix encode_input_single(double x, const EncodingParams& enc,
                                   const ModeSpace& space) {
  const ComplexVector phases = encoding_phases(x, enc.chi_tilde, space.cutoff());
  return OperatorMatrix(space, phases.asDiagonal().toDenseMatrix(), {.unitary = true});
}

OperatorMatrix encode_input_network(std::span<const double> x,
                                    const EncodingParams& enc,
                                    const CompositeSpace& space,
                                    std::span<const std::size_t> target_modes) {
  if (x.size() != target_modes.size()) {
    throw DimensionError("encode_input_network: " + std::to_string(x.size()) +
                         " inputs for " + std::to_string(target_modes.size()) + " modes");
  }
  ComplexVector diag = ComplexVector::Ones(space.dim());
  for (std::size_t t = 0; t < target_modes.size(); ++t) {
    const std::size_t mode = target_modes[t];
    if (mode >= space.num_modes()) {
      throw ValidationError("target_modes", "mode index " + std::to_string(mode) +
                                                " out of range");
    }
    const ComplexVector phases = encoding_phases(x[t], enc.chi_tilde, space.mode(mode).cutoff());
    for (Eigen::Index i = 0; i < space.dim(); ++i) {
      diag(i) *= phases(space.occupation(i, mode));
    }
  }
  return OperatorMatrix(space, diag.asDiagonal().toDenseMatrix(), {.unitary = true});
}

LayeredCircuit::LayeredCircuit(ThetaLayout layout, CircuitConstants constants,
                               double tau, CompositeSpace space)
    : layout_(layout), hamiltonian_(std::move(constants), std::move(space)), tau_(tau) {
  if (static_cast<std::size_t>(layout_.modes()) != hamiltonian_.num_modes()) {
    throw DimensionError("layout has " + std::to_string(layout_.modes()) +
                         " modes but the space has " +
                         std::to_string(hamiltonian_.num_modes()));
  }
}

OperatorMatrix LayeredCircuit::layer_unitary(std::span<const double> theta,
                                             int layer) const {
  const std::size_t block = 3 * static_cast<std::size_t>(layout_.modes());
  return evolve_unitary(hamiltonian_.at(theta.subspan(block * layer, block)), tau_);
}

OperatorMatrix LayeredCircuit::unitary(std::span<const double> theta) const {
  if (theta.size() != layout_.size()) {
    throw ValidationError("theta", "expected " + std::to_string(layout_.size()) +
                                       " parameters, got " + std::to_string(theta.size()));
  }
  const std::size_t block = 3 * static_cast<std::size_t>(layout_.modes());
  ComplexMatrix v = propagate(hamiltonian_.at(theta.subspan(0, block)).matrix(), tau_);
  for (int i = 1; i < layout_.layers(); ++i) {
    const ComplexMatrix u =
        propagate(hamiltonian_.at(theta.subspan(block * i, block)).matrix(), tau_);
    v = u * v;
  }
  return OperatorMatrix(space(), std::move(v), {.unitary = true});
}

OperatorMatrix layered_circuit(std::span<const double> theta,
                               const ThetaLayout& layout,
                               const CircuitConstants& constants, double tau,
                               const CompositeSpace& space) {
  return LayeredCircuit(layout, constants, tau, space).unitary(theta);
}

AdiabaticResult adiabatic_prepare(const AdiabaticSchedule& schedule,
                                  const ModeSpace& space) {
  if (!(schedule.chi > 0.0)) throw ValidationError("chi", "must be positive");
  if (!(schedule.pump_final > 0.0)) throw ValidationError("p", "must be positive");
  if (!(schedule.detuning_initial > schedule.chi)) {
    throw ValidationError("delta_initial", "must exceed chi so the vacuum is the ground state");
  }
  if (!(schedule.drive < 0.0)) throw ValidationError("r", "must be negative");
  if (schedule.num_steps < 1) throw ValidationError("steps", "must be at least 1");
  if (!(schedule.total_time >= 0.0)) throw ValidationError("time", "must be non-negative");

  const StateVector target =
      coherent_state(std::sqrt(schedule.pump_final / schedule.chi), space);
  const KpoHamiltonian terms(CircuitConstants{{schedule.chi}, {}}, CompositeSpace(space));

  StateVector psi = fock_state(space, 0);
  auto fidelity = [&](const StateVector& s) { return std::norm(overlap(target, s)); };

  const double dt = schedule.total_time / schedule.num_steps;
  std::vector<std::pair<double, double>> trace;
  trace.reserve(schedule.num_steps + 1);
  trace.emplace_back(0.0, fidelity(psi));
  for (int step = 0; step < schedule.num_steps; ++step) {
    const double s = (step + 0.5) / schedule.num_steps;
    const double controls[] = {schedule.detuning_initial * (1.0 - s),
                               schedule.pump_final * s, schedule.drive};
    psi = StateVector(psi.space(), propagate(terms.at(controls).matrix(), dt) * psi.amplitudes());
    trace.emplace_back((step + 1) * dt, fidelity(psi));
  }
  const double final_fidelity = trace.back().second;
  return AdiabaticResult{std::move(psi), final_fidelity, std::move(trace)};
}

}  // namespace kpoqml
