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

#include "rtnq/correlations.hpp"
#include "rtnq/noise_spectra.hpp"
#include "rtnq/qstate.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rtnq {

enum class Scenario { SingleRandomFluctuator, FixedCollection, RandomRateCollection };
enum class Topology { Separate, Common };

std::string_view to_string(Scenario scenario);
std::string_view to_string(Topology topology);
/// CLI spellings: single | collection | collection-random, separate | common.
std::optional<Scenario> parse_scenario(std::string_view text);
std::optional<Topology> parse_topology(std::string_view text);

/// Phase multiplier of the topology: 2 for separate baths, 4 for a common one.
int phase_multiplier(Topology topology);

inline constexpr double kDefaultGammaMin = 1e-4;
inline constexpr double kDefaultGammaMax = 1e4;
inline constexpr double kDefaultHorizon = 20.0;
inline constexpr std::size_t kDefaultGridPoints = 2000;
inline constexpr std::uint64_t kDefaultSeed = 20131;

/// \p count uniform times from 0 to \p horizon inclusive.
std::vector<double> uniform_time_grid(double horizon, std::size_t count);

struct ScenarioConfig {
  Scenario scenario = Scenario::SingleRandomFluctuator;
  Topology topology = Topology::Separate;
  RateDistribution dist{1.0, kDefaultGammaMin, kDefaultGammaMax};
  int n_fluctuators = 20;
  /// Explicit rates for FixedCollection. Qubit B of a separate topology uses
  /// fixed_rates_b when given, otherwise the same list.
  std::optional<std::vector<double>> fixed_rates;
  std::optional<std::vector<double>> fixed_rates_b;
  std::vector<double> time_grid = uniform_time_grid(kDefaultHorizon, kDefaultGridPoints);
  std::uint64_t seed = kDefaultSeed;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Fluctuator rates of a fixed-rate collection. \c b is empty for a common
/// environment (both qubits couple to \c a).
struct FluctuatorRates {
  std::vector<double> a;
  std::vector<double> b;
};

/// Explicit rates if configured, otherwise N_f rates per bath drawn once from
/// the distribution on the reserved rate stream of \c config.seed. Empty for
/// the other scenarios.
FluctuatorRates resolve_fixed_rates(const ScenarioConfig& config);

/// Λ_de(t) = [∫ D_{2ν}(γ, t) p_α(γ) dγ]².
double lambda_de(const RateDistribution& dist, double t);
/// Λ_ce(t) = ∫ D_{4ν}(γ, t) p_α(γ) dγ.
double lambda_ce(const RateDistribution& dist, double t);
/// ∫ D_{mν} p_α dγ for either multiplier; the two functions above use it.
double averaged_d_coefficient(const RateDistribution& dist, int m, double t);

/// Γ_de(t) = Π_j D_{2ν}(γ_jA, t) D_{2ν}(γ_jB, t).
double gamma_de(std::span<const double> rates_a, std::span<const double> rates_b, double t);
/// Γ_ce(t) = Π_j D_{4ν}(γ_j, t).
double gamma_ce(std::span<const double> rates, double t);
/// Γ'(t) = Λ(t)^{N_f}.
double gamma_random(const RateDistribution& dist, int n_fluctuators, Topology topology, double t);

/// The Bell-mixture coefficient of \p config at time t. \p multiplier_override
/// (test hook) replaces the topology's phase multiplier when non-zero.
double scenario_coefficient(const ScenarioConfig& config, const FluctuatorRates& rates, double t,
                            int multiplier_override = 0);

struct CorrelationSeries {
  ScenarioConfig config;
  FluctuatorRates rates;
  std::vector<CorrelationPoint> points;
  std::vector<double> coefficients;

  BellMixture state(std::size_t index) const { return BellMixture(coefficients.at(index)); }
};

/// Evaluates the coefficient on the time grid and derives N = |coeff| and
/// Q = h(coeff). Per-time work is independent; the result does not depend
/// on \p threads.
CorrelationSeries evolve_series(const ScenarioConfig& config, unsigned threads = 1);

// Revival analysis.

struct PeakOptions {
  double floor = 1e-3;     ///< ignore maxima at or below this height
  double relative = 0.25;  ///< keep maxima at least this fraction of the tallest one
};

/// Indices of interior local maxima that pass both thresholds.
std::vector<std::size_t> find_revival_peaks(std::span<const double> values, const PeakOptions& options = {});

/// Median gap between consecutive revival peaks; nullopt with fewer than two.
std::optional<double> revival_spacing(std::span<const double> times, std::span<const double> values,
                                      const PeakOptions& options = {});

}  // namespace rtnq
