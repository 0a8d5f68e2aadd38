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

#include <cstdint>
#include <limits>

namespace kpoqml {

/// Counter-based SplitMix64 generator.
///
/// Draw i (0-based) of stream s under seed k is
///   mix64(k + s * 0xD1B54A32D192ED03 + (i + 1) * 0x9E3779B97F4A7C15)
/// where mix64 is the SplitMix64 finalizer. Uniform doubles take the top 53
/// bits: u = (draw >> 11) * 2^-53, in [0, 1). The sequence depends only on
/// (seed, stream, i), so it is trivially reproducible in other languages.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  static std::uint64_t mix64(std::uint64_t z) noexcept;

  std::uint64_t next_u64() noexcept;
  double uniform01() noexcept;
  double uniform(double low, double high) noexcept;

  result_type operator()() noexcept { return next_u64(); }
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Stream identifiers, one per consumer of an experiment seed.
inline constexpr std::uint64_t kDatasetStream = 0;
inline constexpr std::uint64_t kThetaStream = 1;
inline constexpr std::uint64_t kIsingStream = 2;

}  // namespace kpoqml
