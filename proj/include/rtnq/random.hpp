// Copyright 2026 The rtnq Authors
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

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace rtnq {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). The 64-bit
/// key is the master seed; the upper half of the 128-bit counter is the
/// stream id, the lower half counts blocks. Distinct stream ids therefore
/// give independent, non-overlapping sequences without any shared state.
class Philox4x32 {
 public:
  using result_type = std::uint32_t;

  Philox4x32(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (index_ == 4) refill();
    return block_[index_++];
  }

  /// Raw block for a given counter, exposed for known-answer tests.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 4> counter_;
  std::array<std::uint32_t, 4> block_{};
  int index_ = 4;
};

/// Reserved stream ids. Trajectory batches use ids below kRateStream.
inline constexpr std::uint64_t kRateStream = 0xFFFF'FFFF'0000'0000ULL;

/// One independent random stream with the draws the simulation needs.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream) : engine_(seed, stream) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// +1 or -1 with probability ½.
  int sign();
  double exponential(double rate);
  std::uint64_t poisson(double mean);
  /// Beta(a, b) through two gamma variates.
  double beta(double a, double b);

  Philox4x32& engine() { return engine_; }

 private:
  Philox4x32 engine_;
  std::poisson_distribution<std::uint64_t> poisson_;
  std::gamma_distribution<double> gamma_;
};

}  // namespace rtnq
