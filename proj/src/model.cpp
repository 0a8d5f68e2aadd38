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

#include "kpoqml/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "kpoqml/error.hpp"

namespace kpoqml {

namespace {

using SparseOp = Eigen::SparseMatrix<Complex>;

SparseOp to_sparse(const ComplexMatrix& m) { return m.sparseView(); }

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::kSingleKpo: return "single-kpo";
    case Variant::kKpoNetwork: return "kpo-network";
    case Variant::kMultiInputSingleKpo: return "multi-input-single-kpo";
    case Variant::kQubitBaseline: return "qubit-baseline";
  }
  return "unknown";
}

std::string to_string(OutputRule r) {
  switch (r) {
    case OutputRule::kSingle: return "single";
    case OutputRule::kProduct: return "product";
    case OutputRule::kVector: return "vector";
  }
  return "unknown";
}

std::string to_string(Observable::Kind k) {
  switch (k) {
    case Observable::Kind::kQuadrature: return "quadrature";
    case Observable::Kind::kNumber: return "number";
    case Observable::Kind::kPauliZ: return "pauli_z";
  }
  return "unknown";
}

std::size_t ModelSpec::num_params() const noexcept {
  if (variant == Variant::kQubitBaseline) return baseline.num_params();
  return 3 * num_modes() * static_cast<std::size_t>(std::max(layers, 0));
}

std::size_t ModelSpec::output_dim() const noexcept {
  return output == OutputRule::kVector ? observables.size() : 1;
}

ThetaLayout ModelSpec::layout() const {
  return ThetaLayout(layers, static_cast<int>(num_modes()));
}

void ModelSpec::validate() const {
  if (observables.empty()) throw ValidationError("model.observables", "at least one observable is required");
  if (output == OutputRule::kSingle && observables.size() != 1) {
    throw ValidationError("model.output", "rule 'single' takes exactly one observable");
  }
  if (variant == Variant::kQubitBaseline) {
    try {
      baseline.validate();
    } catch (const ValidationError& e) {
      throw ValidationError("model." + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
    if (input_dim != 1) throw ValidationError("model.input_dim", "the qubit baseline takes scalar inputs");
    for (const auto& obs : observables) {
      if (obs.kind != Observable::Kind::kPauliZ) {
        throw ValidationError("model.observables", "the qubit baseline measures pauli_z observables only");
      }
      if (obs.target >= static_cast<std::size_t>(baseline.num_qubits)) {
        throw ValidationError("model.observables", "qubit index out of range");
      }
    }
    return;
  }

  const std::size_t k = num_modes();
  if (k == 0) throw ValidationError("model.cutoffs", "at least one mode is required");
  for (int c : cutoffs) {
    if (c < 2) throw ValidationError("model.cutoffs", "every cutoff must be at least 2");
  }
  if (kerr.size() != k) throw ValidationError("model.chi", "need one Kerr coefficient per mode");
  if (coupling.size() != 0 &&
      (coupling.rows() != static_cast<Eigen::Index>(k) || coupling.cols() != static_cast<Eigen::Index>(k))) {
    throw ValidationError("model.coupling", "must be a K x K matrix");
  }
  if (layers < 1) throw ValidationError("model.layers", "must be positive");
  if (!std::isfinite(tau)) throw ValidationError("model.tau", "must be finite");
  if (!std::isfinite(encoding.chi_tilde) || !std::isfinite(encoding.duration)) {
    throw ValidationError("model.encoding", "must be finite");
  }
  if (!(max_truncation_deficit > 0.0 && max_truncation_deficit < 1.0)) {
    throw ValidationError("model.truncation_tolerance", "must lie in (0, 1)");
  }
  for (const auto& obs : observables) {
    if (obs.kind == Observable::Kind::kPauliZ) {
      throw ValidationError("model.observables", "pauli_z is only available for the qubit baseline");
    }
    if (obs.target >= k) throw ValidationError("model.observables", "mode index out of range");
  }

  switch (variant) {
    case Variant::kSingleKpo:
      if (k != 1) throw ValidationError("model.cutoffs", "single-kpo has exactly one mode");
      if (input_dim != 1) throw ValidationError("model.input_dim", "single-kpo takes scalar inputs");
      if (alpha.size() != 1) throw ValidationError("model.alpha", "need one amplitude");
      break;
    case Variant::kKpoNetwork: {
      if (alpha.size() != k) throw ValidationError("model.alpha", "need one amplitude per mode");
      if (input_dim < 1 || static_cast<std::size_t>(input_dim) > k) {
        throw ValidationError("model.input_dim", "must satisfy 1 <= d_x <= K");
      }
      std::set<std::size_t> seen;
      for (std::size_t m : encode_modes) {
        if (m >= k) throw ValidationError("model.encode_modes", "mode index out of range");
        if (!seen.insert(m).second) throw ValidationError("model.encode_modes", "duplicate mode");
      }
      if (input_dim > 1 && !encode_modes.empty() &&
          encode_modes.size() != static_cast<std::size_t>(input_dim)) {
        throw ValidationError("model.encode_modes", "need one mode per input dimension");
      }
      break;
    }
    case Variant::kMultiInputSingleKpo:
      if (k != 1) throw ValidationError("model.cutoffs", "multi-input-single-kpo has exactly one mode");
      if (input_dim != 2) throw ValidationError("model.input_dim", "multi-input-single-kpo takes two inputs");
      break;
    case Variant::kQubitBaseline:
      break;
  }
}

ModelSpec ModelSpec::single_kpo() { return ModelSpec{}; }

ModelSpec ModelSpec::kpo_network() {
  ModelSpec s;
  s.variant = Variant::kKpoNetwork;
  s.kerr = {1.0, 1.0};
  s.coupling = ComplexMatrix::Zero(2, 2);
  s.coupling(1, 0) = -0.1;
  s.cutoffs = {10, 10};
  s.alpha = {1.0, 1.0};
  s.encoding = {1.0, 1.0};
  s.layers = 6;
  s.tau = 1.0;
  s.observables = {Observable{Observable::Kind::kQuadrature, 0, 1.0},
                   Observable{Observable::Kind::kQuadrature, 1, 1.0}};
  s.output = OutputRule::kProduct;
  return s;
}

ModelSpec ModelSpec::multi_input_single_kpo() {
  ModelSpec s;
  s.variant = Variant::kMultiInputSingleKpo;
  s.input_dim = 2;
  s.observables = {Observable{Observable::Kind::kQuadrature, 0, 1.0},
                   Observable{Observable::Kind::kNumber, 0, 1.0}};
  s.output = OutputRule::kVector;
  return s;
}

ModelSpec ModelSpec::qubit_baseline() {
  ModelSpec s;
  s.variant = Variant::kQubitBaseline;
  s.observables = {Observable{Observable::Kind::kPauliZ, 0, 2.0}};
  return s;
}

Model::Model(ModelSpec spec)
    : spec_((spec.validate(), std::move(spec))),
      space_(spec_.bosonic()
                 ? CompositeSpace([&] {
                     std::vector<ModeSpace> modes;
                     for (int c : spec_.cutoffs) modes.emplace_back(c);
                     return modes;
                   }())
                 : qubit_space(spec_.baseline.num_qubits)) {
  if (!spec_.bosonic()) {
    baseline_.emplace(spec_.baseline);
    for (const auto& obs : spec_.observables) {
      Eigen::VectorXd diag(space_.dim());
      for (Eigen::Index b = 0; b < space_.dim(); ++b) {
        diag(b) = obs.scale * (space_.occupation(b, obs.target) == 0 ? 1.0 : -1.0);
      }
      observables_.push_back(to_sparse(diag.cast<Complex>().asDiagonal().toDenseMatrix()));
    }
    return;
  }

  const std::size_t k = spec_.num_modes();
  if (spec_.variant != Variant::kMultiInputSingleKpo) {
    std::vector<StateVector> factors;
    for (std::size_t j = 0; j < k; ++j) {
      factors.push_back(coherent_state(spec_.alpha[j], space_.mode(j), spec_.max_truncation_deficit));
    }
    initial_.emplace(tensor(factors));
  }
  circuit_.emplace(spec_.layout(), CircuitConstants{spec_.kerr, spec_.coupling}, spec_.tau, space_);

  for (const auto& obs : spec_.observables) {
    const ModeSpace& mode = space_.mode(obs.target);
    const OperatorMatrix a = annihilation_op(mode);
    const OperatorMatrix single =
        obs.kind == Observable::Kind::kNumber
            ? number_op(mode)
            : OperatorMatrix(mode, a.matrix() + a.matrix().adjoint(), {.hermitian = true});
    observables_.push_back(to_sparse(obs.scale * embed(single, obs.target, space_).matrix()));
  }

  if (spec_.variant == Variant::kKpoNetwork) {
    if (!spec_.encode_modes.empty()) {
      encode_modes_ = spec_.encode_modes;
    } else if (spec_.input_dim == 1) {
      for (std::size_t j = 0; j < k; ++j) encode_modes_.push_back(j);
    } else {
      for (int j = 0; j < spec_.input_dim; ++j) encode_modes_.push_back(static_cast<std::size_t>(j));
    }
  }
}

const StateVector& Model::initial_state() const {
  if (!initial_) throw ValidationError("model.variant", "variant has no fixed initial state");
  return *initial_;
}

StateVector Model::encoded_state(std::span<const double> x) const {
  if (x.size() != input_dim()) {
    throw DimensionError("expected " + std::to_string(input_dim()) + " inputs, got " +
                         std::to_string(x.size()));
  }
  switch (spec_.variant) {
    case Variant::kSingleKpo: {
      const ComplexVector phases = encoding_phases(x[0], spec_.encoding.chi_tilde, spec_.cutoffs[0]);
      return StateVector(space_, phases.cwiseProduct(initial_->amplitudes()),
                         initial_->truncation_deficit());
    }
    case Variant::kKpoNetwork: {
      std::vector<double> per_mode;
      if (spec_.input_dim == 1) {
        per_mode.assign(encode_modes_.size(), x[0]);
      } else {
        per_mode.assign(x.begin(), x.end());
      }
      ComplexVector amps = initial_->amplitudes();
      for (std::size_t t = 0; t < encode_modes_.size(); ++t) {
        const std::size_t mode = encode_modes_[t];
        const ComplexVector phases =
            encoding_phases(per_mode[t], spec_.encoding.chi_tilde, space_.mode(mode).cutoff());
        for (Eigen::Index i = 0; i < space_.dim(); ++i) amps(i) *= phases(space_.occupation(i, mode));
      }
      return StateVector(space_, std::move(amps), initial_->truncation_deficit());
    }
    case Variant::kMultiInputSingleKpo:
      return encode_two_inputs_single_kpo(x[0], x[1], spec_.encoding, space_.mode(0),
                                          spec_.max_truncation_deficit);
    case Variant::kQubitBaseline:
      return baseline_->encoded_state(x[0]);
  }
  throw Error("unknown variant");
}

ComplexMatrix Model::encode_batch(const Eigen::MatrixXd& inputs) const {
  if (inputs.cols() != static_cast<Eigen::Index>(input_dim())) {
    throw DimensionError("inputs have " + std::to_string(inputs.cols()) + " columns, model takes " +
                         std::to_string(input_dim()));
  }
  ComplexMatrix out(space_.dim(), inputs.rows());
  std::vector<double> row(input_dim());
  for (Eigen::Index m = 0; m < inputs.rows(); ++m) {
    for (std::size_t d = 0; d < row.size(); ++d) row[d] = inputs(m, static_cast<Eigen::Index>(d));
    out.col(m) = encoded_state(row).amplitudes();
  }
  return out;
}

void Model::check_theta(std::span<const double> theta) const {
  if (theta.size() != num_params()) {
    throw ValidationError("theta", "expected " + std::to_string(num_params()) +
                                       " parameters, got " + std::to_string(theta.size()));
  }
}

OperatorMatrix Model::circuit(std::span<const double> theta) const {
  check_theta(theta);
  return spec_.bosonic() ? circuit_->unitary(theta) : baseline_->circuit(theta);
}

Eigen::MatrixXd Model::expectations(const ComplexMatrix& encoded,
                                    std::span<const double> theta) const {
  if (encoded.rows() != space_.dim()) throw DimensionError("encoded states have the wrong dimension");
  const ComplexMatrix evolved = circuit(theta).matrix() * encoded;
  Eigen::MatrixXd out(encoded.cols(), observables_.size());
  for (std::size_t k = 0; k < observables_.size(); ++k) {
    const ComplexMatrix measured = observables_[k] * evolved;
    const Eigen::VectorXcd values =
        evolved.conjugate().cwiseProduct(measured).colwise().sum().transpose();
    const double worst_imag = values.size() ? values.imag().cwiseAbs().maxCoeff() : 0.0;
    if (worst_imag > kHermitianImagTolerance) {
      throw Error("observable expectation has imaginary part " + std::to_string(worst_imag));
    }
    out.col(static_cast<Eigen::Index>(k)) = values.real();
  }
  return out;
}

Eigen::MatrixXd Model::combine(const Eigen::MatrixXd& expectations) const {
  switch (spec_.output) {
    case OutputRule::kSingle: return expectations.leftCols(1);
    case OutputRule::kProduct: return expectations.rowwise().prod();
    case OutputRule::kVector: return expectations;
  }
  throw Error("unknown output rule");
}

Eigen::MatrixXd Model::evaluate_encoded(const ComplexMatrix& encoded,
                                        std::span<const double> theta) const {
  return combine(expectations(encoded, theta));
}

std::vector<double> Model::evaluate(std::span<const double> x,
                                    std::span<const double> theta) const {
  ComplexMatrix encoded(space_.dim(), 1);
  encoded.col(0) = encoded_state(x).amplitudes();
  const Eigen::MatrixXd out = evaluate_encoded(encoded, theta);
  return std::vector<double>(out.data(), out.data() + out.size());
}

Eigen::MatrixXd Model::evaluate_batch(const Eigen::MatrixXd& inputs,
                                      std::span<const double> theta) const {
  return evaluate_encoded(encode_batch(inputs), theta);
}

Eigen::VectorXd Model::photon_numbers(const Eigen::MatrixXd& inputs,
                                      std::span<const double> theta) const {
  if (!spec_.bosonic()) throw ValidationError("model.variant", "photon numbers need a bosonic variant");
  Eigen::VectorXd total = Eigen::VectorXd::Zero(space_.dim());
  for (Eigen::Index i = 0; i < space_.dim(); ++i) {
    for (std::size_t j = 0; j < space_.num_modes(); ++j) total(i) += space_.occupation(i, j);
  }
  const ComplexMatrix evolved = circuit(theta).matrix() * encode_batch(inputs);
  return (total.asDiagonal() * evolved.cwiseAbs2()).colwise().sum().transpose();
}

CostFunction::CostFunction(const Model& model, const Dataset& dataset)
    : model_(&model), encoded_(model.encode_batch(dataset.inputs)), labels_(dataset.labels) {
  if (dataset.size() == 0) throw ValidationError("dataset", "empty dataset");
  if (labels_.rows() != dataset.size() ||
      labels_.cols() != static_cast<Eigen::Index>(model.output_dim())) {
    throw DimensionError("labels do not match the model output dimension");
  }
}

double CostFunction::operator()(std::span<const double> theta) const {
  const Eigen::MatrixXd out = model_->evaluate_encoded(encoded_, theta);
  double sum = 0.0;
  for (Eigen::Index m = 0; m < out.rows(); ++m) sum += (out.row(m) - labels_.row(m)).squaredNorm();
  return sum / static_cast<double>(out.rows());
}

double mse_cost(std::span<const double> theta, const Dataset& dataset, const Model& model) {
  return CostFunction(model, dataset)(theta);
}

Complex FourierCoefficients::at(int m) const {
  const auto it = terms.find(m);
  return it == terms.end() ? Complex(0.0) : it->second;
}

double FourierCoefficients::evaluate(double x) const {
  Complex sum = 0.0;
  for (const auto& [m, c] : terms) sum += c * std::polar(1.0, std::numbers::pi * m * x);
  return sum.real();
}

int FourierCoefficients::max_offset(double threshold) const {
  int best = 0;
  for (const auto& [m, c] : terms) {
    if (std::abs(c) > threshold) best = std::max(best, std::abs(m));
  }
  return best;
}

FourierCoefficients fourier_series_coefficients(std::span<const double> theta,
                                                const Model& model) {
  const ModelSpec& spec = model.spec();
  if (spec.variant != Variant::kSingleKpo) {
    throw ValidationError("model.variant", "Fourier coefficients need the single-kpo variant");
  }
  if (spec.encoding.chi_tilde != 0.0) {
    throw ValidationError("model.encoding.chi_tilde", "Fourier coefficients need chi_tilde = 0");
  }
  if (spec.output != OutputRule::kSingle) {
    throw ValidationError("model.output", "Fourier coefficients need a single observable");
  }
  const ComplexMatrix v = model.circuit(theta).matrix();
  const ComplexMatrix w = v.adjoint() * (model.observable_matrix(0) * v);
  const ComplexVector& c = model.initial_state().amplitudes();
  FourierCoefficients out;
  const Eigen::Index n = c.size();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = 0; l < n; ++l) {
      out.terms[static_cast<int>(k - l)] += std::conj(c(k)) * w(k, l) * c(l);
    }
  }
  return out;
}

double two_input_phase(double x1, double x2) {
  const double r = std::hypot(x1, x2);
  if (r == 0.0) return 0.0;
  const double angle = std::acos(std::clamp(x1 / r, -1.0, 1.0));
  return x2 > 0.0 ? angle : -angle;
}

StateVector encode_two_inputs_single_kpo(double x1, double x2, const EncodingParams& enc,
                                         const ModeSpace& space, double max_deficit) {
  const double r = std::hypot(x1, x2);
  const StateVector base = coherent_state(r, space, max_deficit);
  const ComplexVector phases =
      encoding_phases(two_input_phase(x1, x2) / std::numbers::pi, enc.chi_tilde, space.cutoff());
  return StateVector(space, phases.cwiseProduct(base.amplitudes()), base.truncation_deficit());
}

Complex overlap_closed_form(double x1, double x2, double x1p, double x2p) {
  const double r = std::hypot(x1, x2);
  const double rp = std::hypot(x1p, x2p);
  const double dphi = two_input_phase(x1p, x2p) - two_input_phase(x1, x2);
  return std::exp(-0.5 * (rp * rp + r * r - 2.0 * rp * r * std::polar(1.0, dphi)));
}

std::vector<double> photon_number_profile(std::span<const double> theta, const Model& model,
                                          std::span<const double> x_grid) {
  if (model.input_dim() != 1) throw ValidationError("model.input_dim", "profile needs scalar inputs");
  const Eigen::MatrixXd inputs =
      Eigen::Map<const Eigen::VectorXd>(x_grid.data(), static_cast<Eigen::Index>(x_grid.size()));
  const Eigen::VectorXd n = model.photon_numbers(inputs, theta);
  return std::vector<double>(n.data(), n.data() + n.size());
}

}  // namespace kpoqml
