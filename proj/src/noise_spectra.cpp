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

#include "rtnq/noise_spectra.hpp"

#include "rtnq/rtn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtnq {

namespace {

// Below this α-1 the power-law branch loses digits to cancellation and the
// α = 1 law is used instead (the two agree to O(α-1)).
constexpr double kLogUniformWindow = 1e-12;

bool log_uniform(double alpha) { return alpha - 1.0 < kLogUniformWindow; }

}  // namespace

RateDistribution::RateDistribution(double alpha, double gamma_min, double gamma_max)
    : alpha_(alpha), gamma_min_(gamma_min), gamma_max_(gamma_max) {
  if (!(alpha >= 1.0 && alpha <= 2.0)) {
    std::ostringstream msg;
    msg << "alpha = " << alpha << " is outside the valid range [1, 2]";
    throw std::domain_error(msg.str());
  }
  if (!(gamma_min > 0.0) || !std::isfinite(gamma_max) || !(gamma_max >= gamma_min)) {
    std::ostringstream msg;
    msg << "rate range [" << gamma_min << ", " << gamma_max
        << "] must satisfy 0 < gamma_min <= gamma_max";
    throw std::domain_error(msg.str());
  }
}

double RateDistribution::pdf(double gamma) const {
  if (is_point_mass()) throw std::domain_error("point-mass rate distribution has no density");
  if (gamma < gamma_min_ || gamma > gamma_max_) return 0.0;
  if (log_uniform(alpha_)) return 1.0 / (gamma * std::log(gamma_max_ / gamma_min_));
  const double e = alpha_ - 1.0;
  // (α-1) γ^{-α} (γ₁γ₂)^{α-1} / (γ₂^{α-1} - γ₁^{α-1}), rearranged to avoid
  // overflow: (γ₁γ₂)^{e} / (γ₂^{e} - γ₁^{e}) = γ₁^{e} / (1 - (γ₁/γ₂)^{e}).
  const double norm = std::pow(gamma_min_, e) / -std::expm1(e * std::log(gamma_min_ / gamma_max_));
  return e * norm * std::pow(gamma, -alpha_);
}

double RateDistribution::cdf(double gamma) const {
  if (gamma < gamma_min_) return 0.0;
  if (gamma >= gamma_max_) return 1.0;
  if (log_uniform(alpha_)) return std::log(gamma / gamma_min_) / std::log(gamma_max_ / gamma_min_);
  const double e = alpha_ - 1.0;
  // [1 - (γ₁/γ)^e] / [1 - (γ₁/γ₂)^e]
  return std::expm1(e * std::log(gamma_min_ / gamma)) /
         std::expm1(e * std::log(gamma_min_ / gamma_max_));
}

double RateDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw std::domain_error("quantile requires u in [0, 1]");
  if (is_point_mass()) return gamma_min_;
  double g;
  if (log_uniform(alpha_)) {
    g = gamma_min_ * std::pow(gamma_max_ / gamma_min_, u);
  } else {
    // γ = [γ₁^{1-α} - u(γ₁^{1-α} - γ₂^{1-α})]^{1/(1-α)}, written relative to
    // whichever endpoint is nearer so that u -> 1 does not cancel.
    const double e = alpha_ - 1.0;
    if (u <= 0.5) {
      const double ratio = std::pow(gamma_min_ / gamma_max_, e);  // (γ₁/γ₂)^e
      g = gamma_min_ * std::pow(1.0 - u * (1.0 - ratio), -1.0 / e);
    } else {
      const double ratio = std::pow(gamma_max_ / gamma_min_, e);
      g = gamma_max_ * std::pow(1.0 + (1.0 - u) * (ratio - 1.0), -1.0 / e);
    }
  }
  return std::clamp(g, gamma_min_, gamma_max_);
}

double rate_pdf(const RateDistribution& dist, double gamma) { return dist.pdf(gamma); }

double sample_rate(const RateDistribution& dist, RngStream& rng) {
  return dist.quantile(rng.uniform());
}

std::vector<double> sample_rates(const RateDistribution& dist, std::size_t count, RngStream& rng) {
  std::vector<double> rates(count);
  for (double& r : rates) r = sample_rate(dist, rng);
  return rates;
}

double expectation_over_rates(const RateDistribution& dist, const std::function<double(double)>& g,
                              std::span<const double> splits, const QuadratureOptions& options) {
  if (dist.is_point_mass()) return g(dist.gamma_min());
  std::vector<double> bp = {std::log(dist.gamma_min()), std::log(dist.gamma_max())};
  for (double s : splits) {
    if (s > dist.gamma_min() && s < dist.gamma_max()) bp.push_back(std::log(s));
  }
  // One panel per decade keeps the initial partition resolving the support.
  for (double d = std::ceil(std::log10(dist.gamma_min())); std::pow(10.0, d) < dist.gamma_max(); d += 1.0) {
    const double r = std::pow(10.0, d);
    if (r > dist.gamma_min()) bp.push_back(std::log(r));
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  const auto integrand = [&](double u) {
    const double gamma = std::exp(u);
    return g(gamma) * dist.pdf(gamma) * gamma;
  };
  return integrate(integrand, bp, options);
}

double synthesized_spectrum(const RateDistribution& dist, double f) {
  if (!(f >= 0.0)) throw std::domain_error("synthesized_spectrum requires f >= 0");
  const double corner = 2.0 * M_PI * f;  // S_RTN changes shape at γ = 2πf
  const std::array<double, 1> splits = {corner};
  QuadratureOptions opts;
  opts.rel_tol = 1e-10;
  return expectation_over_rates(dist, [f](double g) { return rtn_psd(g, f); },
                                f > 0.0 ? std::span<const double>(splits) : std::span<const double>(), opts);
}

double collection_spectrum(std::span<const double> rates, double f) {
  if (rates.empty()) throw std::domain_error("collection_spectrum requires at least one rate");
  double s = 0.0;
  for (double g : rates) s += rtn_psd(g, f);
  return s;
}

std::pair<double, double> power_law_band(const RateDistribution& dist) {
  return {10.0 * dist.gamma_min() / (2.0 * M_PI), dist.gamma_max() / (10.0 * 2.0 * M_PI)};
}

}  // namespace rtnq
