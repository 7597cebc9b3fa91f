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

#include "rtnq/quadrature.hpp"
#include "rtnq/random.hpp"

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace rtnq {

/// Power-law switching-rate law p_α(γ) ∝ γ^{-α} on [γ₁, γ₂], α in [1, 2].
///
/// gamma_min == gamma_max is accepted and denotes a point mass at that rate;
/// pdf() is then undefined (throws) and expectations evaluate the integrand
/// at the single rate.
class RateDistribution {
 public:
  RateDistribution(double alpha, double gamma_min, double gamma_max);

  static RateDistribution point_mass(double gamma) { return {1.0, gamma, gamma}; }

  double alpha() const { return alpha_; }
  double gamma_min() const { return gamma_min_; }
  double gamma_max() const { return gamma_max_; }
  bool is_point_mass() const { return gamma_min_ == gamma_max_; }

  /// Density; 0 outside the support.
  double pdf(double gamma) const;
  double cdf(double gamma) const;
  /// Inverse CDF for u in [0, 1].
  double quantile(double u) const;

 private:
  double alpha_;
  double gamma_min_;
  double gamma_max_;
};

double rate_pdf(const RateDistribution& dist, double gamma);
double sample_rate(const RateDistribution& dist, RngStream& rng);
std::vector<double> sample_rates(const RateDistribution& dist, std::size_t count, RngStream& rng);

/// ∫ g(γ) p_α(γ) dγ, integrated in u = ln γ. Rates in \p splits that fall
/// strictly inside the support start new panels.
double expectation_over_rates(const RateDistribution& dist, const std::function<double(double)>& g,
                              std::span<const double> splits = {},
                              const QuadratureOptions& options = {});

/// S(f) = ∫ S_RTN(f, γ) p_α(γ) dγ.
double synthesized_spectrum(const RateDistribution& dist, double f);

/// Σ_j S_RTN(f, γ_j). Throws std::domain_error for an empty list.
double collection_spectrum(std::span<const double> rates, double f);

/// Frequency band inside which the 1/f^α law is expected:
/// [10 γ₁ / 2π, γ₂ / (10 · 2π)].
std::pair<double, double> power_law_band(const RateDistribution& dist);

}  // namespace rtnq
