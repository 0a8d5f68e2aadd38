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

#include "kpoqml/fock.hpp"

#include <cmath>
#include <string>

#include "kpoqml/error.hpp"

namespace kpoqml {

namespace {

void require_same_space(const CompositeSpace& a, const CompositeSpace& b,
                        const char* what) {
  if (!(a == b)) {
    throw DimensionError(std::string(what) + ": operands live on different spaces");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

ModeSpace::ModeSpace(int cutoff) : cutoff_(cutoff) {
  if (cutoff < 2) {
    throw ValidationError("cutoff", "must be at least 2, got " + std::to_string(cutoff));
  }
}

CompositeSpace::CompositeSpace(ModeSpace mode)
    : CompositeSpace(std::vector<ModeSpace>{mode}) {}

CompositeSpace::CompositeSpace(std::initializer_list<ModeSpace> modes)
    : CompositeSpace(std::vector<ModeSpace>(modes)) {}

CompositeSpace::CompositeSpace(std::vector<ModeSpace> modes)
    : modes_(std::move(modes)), dim_(1) {
  if (modes_.empty()) {
    throw ValidationError("modes", "a composite space needs at least one mode");
  }
  for (const auto& m : modes_) dim_ *= m.cutoff();
}

Eigen::Index CompositeSpace::stride(std::size_t j) const {
  Eigen::Index s = 1;
  for (std::size_t i = modes_.size(); i-- > j + 1;) s *= modes_[i].cutoff();
  return s;
}

int CompositeSpace::occupation(Eigen::Index index, std::size_t j) const {
  return static_cast<int>((index / stride(j)) % modes_.at(j).cutoff());
}

CompositeSpace CompositeSpace::concat(const CompositeSpace& other) const {
  std::vector<ModeSpace> all = modes_;
  all.insert(all.end(), other.modes_.begin(), other.modes_.end());
  return CompositeSpace(std::move(all));
}

StateVector::StateVector(CompositeSpace space, ComplexVector amplitudes,
                         double truncation_deficit)
    : space_(std::move(space)),
      amplitudes_(std::move(amplitudes)),
      truncation_deficit_(truncation_deficit) {
  if (amplitudes_.size() != space_.dim()) {
    throw DimensionError("state has " + std::to_string(amplitudes_.size()) +
                         " amplitudes for a space of dimension " +
                         std::to_string(space_.dim()));
  }
}

OperatorMatrix::OperatorMatrix(CompositeSpace space, ComplexMatrix entries,
                               OperatorProperties props)
    : space_(std::move(space)), entries_(std::move(entries)), props_(props) {
  if (entries_.rows() != space_.dim() || entries_.cols() != space_.dim()) {
    throw DimensionError("operator shape " + std::to_string(entries_.rows()) + "x" +
                         std::to_string(entries_.cols()) +
                         " does not match space dimension " +
                         std::to_string(space_.dim()));
  }
}

double OperatorMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::unitarity_defect() const {
  const ComplexMatrix gram = entries_.adjoint() * entries_;
  return (gram - ComplexMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::adjoint() const {
  return OperatorMatrix(space_, entries_.adjoint(), props_);
}

OperatorMatrix annihilation_op(const ModeSpace& space) {
  const int n = space.cutoff();
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return OperatorMatrix(space, std::move(a));
}

OperatorMatrix creation_op(const ModeSpace& space) {
  return annihilation_op(space).adjoint();
}

OperatorMatrix number_op(const ModeSpace& space) {
  const int n = space.cutoff();
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return OperatorMatrix(space, std::move(m), {.hermitian = true});
}

OperatorMatrix identity_op(const CompositeSpace& space) {
  return OperatorMatrix(space, ComplexMatrix::Identity(space.dim(), space.dim()),
                        {.hermitian = true, .unitary = true});
}

StateVector fock_state(const CompositeSpace& space,
                       std::span<const int> occupations) {
  if (occupations.size() != space.num_modes()) {
    throw DimensionError("fock_state: expected " + std::to_string(space.num_modes()) +
                         " occupation numbers");
  }
  Eigen::Index index = 0;
  for (std::size_t j = 0; j < occupations.size(); ++j) {
    if (occupations[j] < 0 || occupations[j] >= space.mode(j).cutoff()) {
      throw ValidationError("occupations", "Fock index outside the cutoff");
    }
    index += occupations[j] * space.stride(j);
  }
  ComplexVector amps = ComplexVector::Zero(space.dim());
  amps(index) = 1.0;
  return StateVector(space, std::move(amps));
}

StateVector fock_state(const ModeSpace& space, int k) {
  const int occ[] = {k};
  return fock_state(CompositeSpace(space), occ);
}

StateVector coherent_state(Complex alpha, const ModeSpace& space,
                           double max_deficit) {
  const int n = space.cutoff();
  ComplexVector amps(n);
  amps(0) = std::exp(-0.5 * std::norm(alpha));
  for (int k = 1; k < n; ++k) {
    amps(k) = amps(k - 1) * alpha / std::sqrt(static_cast<double>(k));
  }
  const double kept = amps.squaredNorm();
  const double deficit = std::max(0.0, 1.0 - kept);
  if (deficit > max_deficit) {
    throw TruncationError("coherent state |alpha|=" + std::to_string(std::abs(alpha)) +
                              " loses " + std::to_string(deficit) +
                              " of its norm at cutoff " + std::to_string(n),
                          deficit);
  }
  amps /= std::sqrt(kept);
  return StateVector(space, std::move(amps), deficit);
}

OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b) {
  const OperatorProperties pa = a.properties();
  const OperatorProperties pb = b.properties();
  return OperatorMatrix(a.space().concat(b.space()), kron(a.matrix(), b.matrix()),
                        {.hermitian = pa.hermitian && pb.hermitian,
                         .unitary = pa.unitary && pb.unitary});
}

OperatorMatrix tensor(std::span<const OperatorMatrix> ops) {
  if (ops.empty()) throw DimensionError("tensor: no operands");
  OperatorMatrix out = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) out = tensor(out, ops[i]);
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  ComplexVector amps(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    amps.segment(i * b.dim(), b.dim()) = a[i] * b.amplitudes();
  }
  // Norm deficits of independent factors compose multiplicatively.
  const double kept = (1.0 - a.truncation_deficit()) * (1.0 - b.truncation_deficit());
  return StateVector(a.space().concat(b.space()), std::move(amps), 1.0 - kept);
}

StateVector tensor(std::span<const StateVector> states) {
  if (states.empty()) throw DimensionError("tensor: no operands");
  StateVector out = states.front();
  for (std::size_t i = 1; i < states.size(); ++i) out = tensor(out, states[i]);
  return out;
}

OperatorMatrix embed(const OperatorMatrix& op, std::size_t mode,
                     const CompositeSpace& space) {
  if (mode >= space.num_modes()) {
    throw DimensionError("embed: mode " + std::to_string(mode) + " out of range");
  }
  if (!(op.space() == CompositeSpace(space.mode(mode)))) {
    throw DimensionError("embed: operator does not act on mode " + std::to_string(mode));
  }
  const Eigen::Index outer = space.dim() / (space.stride(mode) * space.mode(mode).cutoff());
  const Eigen::Index inner = space.stride(mode);
  ComplexMatrix m = kron(kron(ComplexMatrix::Identity(outer, outer), op.matrix()),
                         ComplexMatrix::Identity(inner, inner));
  return OperatorMatrix(space, std::move(m), op.properties());
}

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b) {
  require_same_space(a.space(), b.space(), "multiply");
  return OperatorMatrix(a.space(), a.matrix() * b.matrix(),
                        {.hermitian = false, .unitary = a.unitary() && b.unitary()});
}

StateVector apply(const OperatorMatrix& op, const StateVector& state) {
  require_same_space(op.space(), state.space(), "apply");
  return StateVector(state.space(), op.matrix() * state.amplitudes(),
                     state.truncation_deficit());
}

Complex expectation(const StateVector& state, const OperatorMatrix& op) {
  require_same_space(op.space(), state.space(), "expectation");
  return state.amplitudes().dot(op.matrix() * state.amplitudes());
}

double expectation_real(const StateVector& state, const OperatorMatrix& op) {
  const Complex value = expectation(state, op);
  if (std::abs(value.imag()) > kHermitianImagTolerance) {
    throw Error("expectation value has imaginary part " + std::to_string(value.imag()) +
                "; operator is not Hermitian");
  }
  return value.real();
}

Complex overlap(const StateVector& a, const StateVector& b) {
  require_same_space(a.space(), b.space(), "overlap");
  return a.amplitudes().dot(b.amplitudes());
}

}  // namespace kpoqml
