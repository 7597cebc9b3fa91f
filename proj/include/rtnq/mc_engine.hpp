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

#include "rtnq/dynamics.hpp"
#include "rtnq/qstate.hpp"
#include "rtnq/rtn.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rtnq {

/// Monte Carlo run description. Trajectories are split into fixed batches
/// (the partition depends only on n_trajectories); batch k draws from the
/// counter-based stream (seed, k) and batch sums are reduced in index order,
/// so estimates are bitwise identical for every thread count.
struct McConfig {
  ScenarioConfig scenario;
  std::size_t n_trajectories = 100000;
  /// 0 = hardware concurrency, 1 = single-threaded.
  unsigned threads = 0;

  static constexpr std::size_t kMinTrajectories = 1000;

  void validate() const;
};

struct McEstimate {
  double time = 0.0;
  double coeff_mean = 0.0;
  double coeff_stderr = 0.0;
  TwoQubitDensityMatrix density_matrix = TwoQubitDensityMatrix::maximally_mixed();
  /// Largest |ρ_ij| outside the {|φ+>, |ψ+>} pattern and the standard error
  /// of those elements.
  double off_family_max = 0.0;
  double off_family_stderr = 0.0;
};

/// Pure state exp(iφ_A σx) ⊗ exp(iφ_B σx) |φ+>, built from the two local
/// unitaries.
Vector4c evolve_trajectory(double phase_a, double phase_b);

/// <P_φ+> - <P_ψ+> of a pure state.
double bell_coefficient(const Vector4c& state);

/// Per-time averages over trajectories. Single-fluctuator and random-rate
/// scenarios draw fresh rates for every trajectory; fixed collections use
/// \p rates (see resolve_fixed_rates).
std::vector<McEstimate> estimate_coefficient(const McConfig& config, const FluctuatorRates& rates);
std::vector<McEstimate> estimate_coefficient(const McConfig& config);

struct McCorrelationPoint {
  double time = 0.0;
  double negativity = 0.0;  ///< of the Bell-diagonal part of the averaged density matrix
  double negativity_stderr = 0.0;
  double discord = 0.0;  ///< of the same Bell-diagonal part
  /// h mapped over negativity ± 3 stderr.
  double discord_band_lo = 0.0;
  double discord_band_hi = 0.0;
};

struct McCorrelationSeries {
  McConfig config;
  FluctuatorRates rates;
  std::vector<McEstimate> estimates;
  std::vector<McCorrelationPoint> points;
};

/// Negativity and discord of the trajectory-averaged density matrix after
/// dropping its Bell-basis coherences. The exact average has none (flipping
/// every c_j maps φ to -φ), so they are sampling noise; off_family_max
/// reports them. Left in, they would bias the negativity upward near zero.
McCorrelationSeries estimate_correlations(const McConfig& config);

struct PhaseFactorEstimate {
  double time = 0.0;
  double mean = 0.0;
  double stderr = 0.0;
};

/// <cos(mφ(t))> for a single fluctuator of fixed rate, from explicit
/// flip-time trajectories.
std::vector<PhaseFactorEstimate> estimate_phase_factor(double gamma, int m, std::span<const double> times,
                                                       std::size_t n_trajectories, std::uint64_t seed,
                                                       unsigned threads = 0);

/// φ(t) = -ν∫c at each of the ascending \p times, in one pass over the flips.
std::vector<double> phases_on_grid(const RtnTrajectory& trajectory, std::span<const double> times);

}  // namespace rtnq
