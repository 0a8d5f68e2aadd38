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

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kpoqml {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands live on different Hilbert spaces or have incompatible shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A coherent state lost more norm to the Fock cutoff than allowed.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, double deficit)
      : Error(what), deficit_(deficit) {}
  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

/// A precondition or configuration value is out of range. `field()` names the
/// offending input, using the dotted JSON path for configuration errors.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class NonFiniteCostError : public Error {
 public:
  NonFiniteCostError(const std::string& what, std::vector<double> theta)
      : Error(what), theta_(std::move(theta)) {}
  const std::vector<double>& theta() const noexcept { return theta_; }

 private:
  std::vector<double> theta_;
};

}  // namespace kpoqml
