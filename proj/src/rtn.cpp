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

#include "rtnq/rtn.hpp"

#include "rtnq/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtnq {

namespace {

constexpr double kBranchWindow = 1e-9;
constexpr double kSeriesLimit = 1e-4;

// sinh(x)/x and sin(x)/x.
double sinhc(double x) {
  if (std::abs(x) < kSeriesLimit) return 1.0 + x * x / 6.0 * (1.0 + x * x / 20.0);
  return std::sinh(x) / x;
}

double sinc(double x) {
  if (std::abs(x) < kSeriesLimit) return 1.0 - x * x / 6.0 * (1.0 - x * x / 20.0);
  return std::sin(x) / x;
}

}  // namespace

RtnParams::RtnParams(double gamma, int m) : gamma_(gamma), m_(m) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    std::ostringstream msg;
    msg << "switching rate must be positive, got " << gamma;
    throw std::domain_error(msg.str());
  }
  if (m != 2 && m != 4) {
    std::ostringstream msg;
    msg << "phase multiplier m must be 2 or 4, got " << m;
    throw std::domain_error(msg.str());
  }
}

double d_coefficient(const RtnParams& params, double t) {
  return d_coefficient(params.gamma(), params.m(), t);
}

double d_coefficient(double gamma, int m, double t) {
  if (!(t >= 0.0)) throw std::domain_error("d_coefficient requires t >= 0");
  if (!(gamma >= 0.0)) throw std::domain_error("d_coefficient requires gamma >= 0");
  const double a = m * kCoupling;
  if (t == 0.0) return 1.0;
  if (std::abs(gamma - a) < kBranchWindow * a) {
    return std::exp(-gamma * t) * (1.0 + gamma * t);
  }
  if (gamma > a) {
    const double kappa = std::sqrt((gamma - a) * (gamma + a));
    const double slow = std::exp(-(a * a / (gamma + kappa)) * t);  // e^{-(γ-κ)t}
    const double fast = std::exp(-(gamma + kappa) * t);
    const double kt = kappa * t;
    if (kt < kSeriesLimit) {
      return std::exp(-gamma * t) * (std::cosh(kt) + gamma * t * sinhc(kt));
    }
    // e^{-γt}[cosh κt + (γ/κ) sinh κt]
    return 0.5 * (slow + fast) + 0.5 * (gamma / kappa) * (slow - fast);
  }
  const double kappa = std::sqrt((a - gamma) * (a + gamma));
  const double kt = kappa * t;
  return std::exp(-gamma * t) * (std::cos(kt) + gamma * t * sinc(kt));
}

PhaseDensity phase_pdf(double gamma, double t, double phi) {
  if (!(t >= 0.0)) throw std::domain_error("phase_pdf requires t >= 0");
  if (!(gamma >= 0.0)) throw std::domain_error("phase_pdf requires gamma >= 0");
  PhaseDensity out;
  const double edge = kCoupling * t;
  out.atom_weight = 0.5 * std::exp(-gamma * t);
  if (!(std::abs(phi) < edge)) return out;
  const double r = phi / edge;
  const double s = std::sqrt((1.0 - r) * (1.0 + r));
  const double x = gamma * t * s;
  // e^{-γt} I_v(x) = e^{-γt(1-s)} · (e^{-x} I_v(x))
  const double damp = std::exp(-gamma * t * (1.0 - s));
  // I_1(x)/s -> γt/2 as s -> 0.
  const double i1_over_s = s > 1e-8 ? bessel_i1_scaled(x) / s : 0.5 * gamma * t * std::exp(-x);
  out.continuous = 0.5 * (gamma / kCoupling) * damp * (bessel_i0_scaled(x) + i1_over_s);
  return out;
}

RtnTrajectory sample_trajectory(double gamma, double horizon, RngStream& rng) {
  if (!(gamma > 0.0) || !(horizon > 0.0)) {
    throw std::domain_error("sample_trajectory requires gamma > 0 and horizon > 0");
  }
  RtnTrajectory traj;
  traj.horizon = horizon;
  traj.initial_value = rng.sign();
  double t = rng.exponential(gamma);
  while (t <= horizon) {
    traj.flip_times.push_back(t);
    t += rng.exponential(gamma);
  }
  return traj;
}

RtnPhase phase_of(const RtnTrajectory& trajectory, double t) {
  if (!(t >= 0.0) || t > trajectory.horizon) {
    std::ostringstream msg;
    msg << "phase_of: t = " << t << " outside [0, " << trajectory.horizon << "]";
    throw std::domain_error(msg.str());
  }
  double integral = 0.0;
  double last = 0.0;
  int c = trajectory.initial_value;
  for (double flip : trajectory.flip_times) {
    if (flip >= t) break;
    integral += c * (flip - last);
    last = flip;
    c = -c;
  }
  integral += c * (t - last);
  return {-kCoupling * integral};
}

int value_at(const RtnTrajectory& trajectory, double t) {
  const auto flips = std::upper_bound(trajectory.flip_times.begin(), trajectory.flip_times.end(), t) -
                     trajectory.flip_times.begin();
  return (flips % 2 == 0) ? trajectory.initial_value : -trajectory.initial_value;
}

double rtn_psd(double gamma, double f) {
  return 4.0 * gamma / (4.0 * M_PI * M_PI * f * f + gamma * gamma);
}

double advance_telegraph(double gamma, double dt, int& value, RngStream& rng) {
  const std::uint64_t flips = rng.poisson(gamma * dt);
  if (flips == 0) return value * dt;
  const double segments = static_cast<double>(flips + 1);
  const double same = std::ceil(0.5 * segments);  // segments spent at the start value
  const double t_same = dt * rng.beta(same, segments - same);
  const double integral = value * (2.0 * t_same - dt);
  if (flips % 2 == 1) value = -value;
  return integral;
}

}  // namespace rtnq
