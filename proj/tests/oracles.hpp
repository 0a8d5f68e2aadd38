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

// Independent reference computations used by the unit tests. None of these
// route through the library's eigensolver paths.

#include <cmath>
#include <complex>

#include <Eigen/Dense>

namespace kpoqml::testing {

// exp(-i tau H) by scaling and squaring a truncated Taylor series.
inline Eigen::MatrixXcd taylor_expm(const Eigen::MatrixXcd& h, double tau, int terms = 20) {
  const std::complex<double> minus_i(0.0, -1.0);
  Eigen::MatrixXcd a = minus_i * tau * h;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) > 0.5) ++squarings;
  a /= std::ldexp(1.0, squarings);
  Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(h.rows(), h.cols());
  Eigen::MatrixXcd sum = term;
  for (int k = 1; k <= terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

inline Eigen::MatrixXcd random_hermitian(int n, unsigned seed) {
  std::srand(seed);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Random(n, n);
  return (m + m.adjoint()) / 2.0;
}

inline double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// ln k! summed directly.
inline double log_factorial(int k) {
  double s = 0.0;
  for (int i = 2; i <= k; ++i) s += std::log(static_cast<double>(i));
  return s;
}

}  // namespace kpoqml::testing
