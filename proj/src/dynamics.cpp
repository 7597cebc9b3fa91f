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

#include "rtnq/dynamics.hpp"

#include "detail/parallel.hpp"
#include "rtnq/rtn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtnq {

namespace {

// Λ integrals aim well below the 1e-8 contract and only fail above it.
QuadratureOptions lambda_quadrature() {
  QuadratureOptions opts;
  opts.rel_tol = 1e-11;
  opts.accept_rel_tol = 1e-8;
  opts.max_intervals = 4000;
  return opts;
}

double product_of_d(std::span<const double> rates, int m, double t) {
  double p = 1.0;
  for (double g : rates) p *= d_coefficient(g, m, t);
  return p;
}

void require_rates_in_support(const std::vector<double>& rates, const RateDistribution& dist,
                              const char* field) {
  for (double g : rates) {
    if (!(g >= dist.gamma_min() && g <= dist.gamma_max())) {
      std::ostringstream msg;
      msg << field << ": rate " << g << " outside [gamma_min, gamma_max] = [" << dist.gamma_min()
          << ", " << dist.gamma_max() << "]";
      throw std::invalid_argument(msg.str());
    }
  }
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  switch (scenario) {
    case Scenario::SingleRandomFluctuator:
      return "single";
    case Scenario::FixedCollection:
      return "collection";
    case Scenario::RandomRateCollection:
      return "collection-random";
  }
  return "?";
}

std::string_view to_string(Topology topology) {
  return topology == Topology::Separate ? "separate" : "common";
}

std::optional<Scenario> parse_scenario(std::string_view text) {
  if (text == "single") return Scenario::SingleRandomFluctuator;
  if (text == "collection") return Scenario::FixedCollection;
  if (text == "collection-random") return Scenario::RandomRateCollection;
  return std::nullopt;
}

std::optional<Topology> parse_topology(std::string_view text) {
  if (text == "separate") return Topology::Separate;
  if (text == "common") return Topology::Common;
  return std::nullopt;
}

int phase_multiplier(Topology topology) { return topology == Topology::Separate ? 2 : 4; }

std::vector<double> uniform_time_grid(double horizon, std::size_t count) {
  if (count < 2 || !(horizon > 0.0)) {
    throw std::invalid_argument("time grid needs at least two points and a positive horizon");
  }
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) {
    grid[i] = horizon * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return grid;
}

void ScenarioConfig::validate() const {
  if (time_grid.empty()) throw std::invalid_argument("time_grid: must not be empty");
  if (!(time_grid.front() >= 0.0)) throw std::invalid_argument("time_grid: times must be >= 0");
  for (std::size_t i = 1; i < time_grid.size(); ++i) {
    if (!(time_grid[i] > time_grid[i - 1])) {
      throw std::invalid_argument("time_grid: times must be strictly increasing");
    }
  }
  if (n_fluctuators < 1) throw std::invalid_argument("nf: must be >= 1");
  if (fixed_rates) {
    if (scenario != Scenario::FixedCollection) {
      throw std::invalid_argument("fixed_rates: only valid for the collection scenario");
    }
    if (fixed_rates->empty()) throw std::invalid_argument("fixed_rates: must not be empty");
    require_rates_in_support(*fixed_rates, dist, "fixed_rates");
  }
  if (fixed_rates_b) {
    if (!fixed_rates) throw std::invalid_argument("fixed_rates_b: requires fixed_rates");
    if (fixed_rates_b->size() != fixed_rates->size()) {
      throw std::invalid_argument("fixed_rates_b: must have the same length as fixed_rates");
    }
    require_rates_in_support(*fixed_rates_b, dist, "fixed_rates_b");
  }
}

FluctuatorRates resolve_fixed_rates(const ScenarioConfig& config) {
  FluctuatorRates rates;
  if (config.scenario != Scenario::FixedCollection) return rates;
  const bool separate = config.topology == Topology::Separate;
  if (config.fixed_rates) {
    rates.a = *config.fixed_rates;
    if (separate) rates.b = config.fixed_rates_b ? *config.fixed_rates_b : *config.fixed_rates;
    return rates;
  }
  RngStream rng(config.seed, kRateStream);
  const auto n = static_cast<std::size_t>(config.n_fluctuators);
  rates.a = sample_rates(config.dist, n, rng);
  if (separate) rates.b = sample_rates(config.dist, n, rng);
  return rates;
}

double averaged_d_coefficient(const RateDistribution& dist, int m, double t) {
  if (!(t >= 0.0)) throw std::domain_error("coefficients require t >= 0");
  if (t == 0.0) return 1.0;
  const std::array<double, 1> branch = {m * kCoupling};
  return expectation_over_rates(dist, [m, t](double g) { return d_coefficient(g, m, t); }, branch,
                                lambda_quadrature());
}

double lambda_de(const RateDistribution& dist, double t) {
  const double avg = averaged_d_coefficient(dist, 2, t);
  return std::min(1.0, avg * avg);
}

double lambda_ce(const RateDistribution& dist, double t) {
  return std::clamp(averaged_d_coefficient(dist, 4, t), -1.0, 1.0);
}

double gamma_de(std::span<const double> rates_a, std::span<const double> rates_b, double t) {
  if (rates_a.empty() || rates_b.empty()) throw std::domain_error("gamma_de requires non-empty rate sets");
  return product_of_d(rates_a, 2, t) * product_of_d(rates_b, 2, t);
}

double gamma_ce(std::span<const double> rates, double t) {
  if (rates.empty()) throw std::domain_error("gamma_ce requires a non-empty rate set");
  return product_of_d(rates, 4, t);
}

double gamma_random(const RateDistribution& dist, int n_fluctuators, Topology topology, double t) {
  if (n_fluctuators < 1) throw std::domain_error("gamma_random requires n_fluctuators >= 1");
  const double lambda = topology == Topology::Separate ? lambda_de(dist, t) : lambda_ce(dist, t);
  return std::pow(lambda, n_fluctuators);
}

double scenario_coefficient(const ScenarioConfig& config, const FluctuatorRates& rates, double t,
                            int multiplier_override) {
  if (t == 0.0) return 1.0;
  const int m = multiplier_override != 0 ? multiplier_override : phase_multiplier(config.topology);
  const bool separate = config.topology == Topology::Separate;
  switch (config.scenario) {
    case Scenario::SingleRandomFluctuator: {
      const double avg = averaged_d_coefficient(config.dist, m, t);
      return std::clamp(separate ? avg * avg : avg, -1.0, 1.0);
    }
    case Scenario::FixedCollection: {
      const double pa = product_of_d(rates.a, m, t);
      return separate ? pa * product_of_d(rates.b, m, t) : pa;
    }
    case Scenario::RandomRateCollection: {
      const double avg = averaged_d_coefficient(config.dist, m, t);
      const double lambda = std::clamp(separate ? avg * avg : avg, -1.0, 1.0);
      return std::pow(lambda, config.n_fluctuators);
    }
  }
  throw std::logic_error("unknown scenario");
}

CorrelationSeries evolve_series(const ScenarioConfig& config, unsigned threads) {
  config.validate();
  CorrelationSeries series;
  series.config = config;
  series.rates = resolve_fixed_rates(config);
  const std::size_t n = config.time_grid.size();
  series.coefficients.assign(n, 0.0);
  series.points.assign(n, {});
  detail::parallel_for(n, threads, [&](std::size_t i) {
    const double t = config.time_grid[i];
    const double coeff = scenario_coefficient(config, series.rates, t);
    series.coefficients[i] = coeff;
    series.points[i] = {t, std::abs(coeff), h_function(coeff)};
  });
  return series;
}

std::vector<std::size_t> find_revival_peaks(std::span<const double> values, const PeakOptions& options) {
  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1] && values[i] > options.floor) {
      maxima.push_back(i);
    }
  }
  double tallest = 0.0;
  for (std::size_t i : maxima) tallest = std::max(tallest, values[i]);
  std::erase_if(maxima, [&](std::size_t i) { return values[i] < options.relative * tallest; });
  return maxima;
}

std::optional<double> revival_spacing(std::span<const double> times, std::span<const double> values,
                                      const PeakOptions& options) {
  if (times.size() != values.size()) throw std::invalid_argument("revival_spacing: size mismatch");
  const auto peaks = find_revival_peaks(values, options);
  if (peaks.size() < 2) return std::nullopt;
  std::vector<double> gaps;
  for (std::size_t k = 1; k < peaks.size(); ++k) gaps.push_back(times[peaks[k]] - times[peaks[k - 1]]);
  std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2), gaps.end());
  if (gaps.size() % 2 == 1) return gaps[gaps.size() / 2];
  const double upper = gaps[gaps.size() / 2];
  const double lower = *std::max_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2));
  return 0.5 * (lower + upper);
}

}  // namespace rtnq
