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

// Truncated bosonic Fock-space linear algebra.
//
// Composite spaces order their modes so that mode 0 is the slowest-varying
// index of the flat basis: |k_0, k_1, ..., k_{K-1}> sits at
// sum_j k_j * stride(j) with stride(K-1) = 1. Operators are the exact
// infinite-dimensional matrices restricted to the cutoff block, with no
// boundary correction, so a^dagger a is exactly diagonal.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace kpoqml {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kDefaultMaxTruncationDeficit = 1e-6;
inline constexpr double kHermitianImagTolerance = 1e-10;

class ModeSpace {
 public:
  explicit ModeSpace(int cutoff);

  int cutoff() const noexcept { return cutoff_; }

  friend bool operator==(const ModeSpace&, const ModeSpace&) = default;

 private:
  int cutoff_;
};

class CompositeSpace {
 public:
  CompositeSpace(ModeSpace mode);  // NOLINT(google-explicit-constructor)
  explicit CompositeSpace(std::vector<ModeSpace> modes);
  CompositeSpace(std::initializer_list<ModeSpace> modes);

  std::size_t num_modes() const noexcept { return modes_.size(); }
  const ModeSpace& mode(std::size_t j) const { return modes_.at(j); }
  const std::vector<ModeSpace>& modes() const noexcept { return modes_; }
  Eigen::Index dim() const noexcept { return dim_; }

  Eigen::Index stride(std::size_t j) const;
  // Occupation number of mode `j` in flat basis index `index`.
  int occupation(Eigen::Index index, std::size_t j) const;

  CompositeSpace concat(const CompositeSpace& other) const;

  friend bool operator==(const CompositeSpace& a, const CompositeSpace& b) {
    return a.modes_ == b.modes_;
  }

 private:
  std::vector<ModeSpace> modes_;
  Eigen::Index dim_;
};

class StateVector {
 public:
  StateVector(CompositeSpace space, ComplexVector amplitudes,
              double truncation_deficit = 0.0);

  const CompositeSpace& space() const noexcept { return space_; }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Eigen::Index i) const { return amplitudes_(i); }
  Eigen::Index dim() const noexcept { return amplitudes_.size(); }
  double norm() const { return amplitudes_.norm(); }

  // Norm lost to the cutoff before renormalization (coherent states only).
  double truncation_deficit() const noexcept { return truncation_deficit_; }

 private:
  CompositeSpace space_;
  ComplexVector amplitudes_;
  double truncation_deficit_;
};

struct OperatorProperties {
  bool hermitian = false;
  bool unitary = false;
};

/// Dense operator on a composite space. The Hermitian / unitary flags are
/// claims made by the constructing routine; `hermiticity_defect()` and
/// `unitarity_defect()` measure them.
class OperatorMatrix {
 public:
  OperatorMatrix(CompositeSpace space, ComplexMatrix entries,
                 OperatorProperties props = {});

  const CompositeSpace& space() const noexcept { return space_; }
  const ComplexMatrix& matrix() const noexcept { return entries_; }
  Complex operator()(Eigen::Index row, Eigen::Index col) const {
    return entries_(row, col);
  }
  Eigen::Index dim() const noexcept { return entries_.rows(); }

  bool hermitian() const noexcept { return props_.hermitian; }
  bool unitary() const noexcept { return props_.unitary; }
  OperatorProperties properties() const noexcept { return props_; }

  // max |A - A^dagger|
  double hermiticity_defect() const;
  // max |A^dagger A - I|
  double unitarity_defect() const;

  OperatorMatrix adjoint() const;

 private:
  CompositeSpace space_;
  ComplexMatrix entries_;
  OperatorProperties props_;
};

OperatorMatrix annihilation_op(const ModeSpace& space);
OperatorMatrix creation_op(const ModeSpace& space);
OperatorMatrix number_op(const ModeSpace& space);
OperatorMatrix identity_op(const CompositeSpace& space);

StateVector fock_state(const CompositeSpace& space,
                       std::span<const int> occupations);
StateVector fock_state(const ModeSpace& space, int k);

/// Truncated coherent state c_k = exp(-|alpha|^2/2) alpha^k / sqrt(k!),
/// renormalized to unit norm. Throws TruncationError when the norm lost to
/// the cutoff exceeds `max_deficit`; otherwise the loss is reported by
/// StateVector::truncation_deficit().
StateVector coherent_state(Complex alpha, const ModeSpace& space,
                           double max_deficit = kDefaultMaxTruncationDeficit);

// Kronecker products in operand order (first operand = slowest index).
OperatorMatrix tensor(std::span<const OperatorMatrix> ops);
OperatorMatrix tensor(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector tensor(std::span<const StateVector> states);
StateVector tensor(const StateVector& a, const StateVector& b);

// I (x) ... (x) op (x) ... (x) I with `op` on mode `mode` of `space`.
OperatorMatrix embed(const OperatorMatrix& op, std::size_t mode,
                     const CompositeSpace& space);

OperatorMatrix multiply(const OperatorMatrix& a, const OperatorMatrix& b);
StateVector apply(const OperatorMatrix& op, const StateVector& state);

Complex expectation(const StateVector& state, const OperatorMatrix& op);
// Expectation of a Hermitian operator with the imaginary part checked
// against kHermitianImagTolerance and dropped.
double expectation_real(const StateVector& state, const OperatorMatrix& op);

// <a|b>
Complex overlap(const StateVector& a, const StateVector& b);

}  // namespace kpoqml
