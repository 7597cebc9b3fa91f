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

#include "rtnq/random.hpp"

#include <vector>

namespace rtnq {

// The coupling ν sets the unit system: rates are γ/ν, times are νt.
inline constexpr double kCoupling = 1.0;

/// Switching rate and phase multiplier of one telegraph fluctuator.
class RtnParams {
 public:
  /// Throws std::domain_error unless gamma > 0 and m is 2 or 4.
  RtnParams(double gamma, int m);
  double gamma() const { return gamma_; }
  int m() const { return m_; }

 private:
  double gamma_;
  int m_;
};

/// D_{mν}(t) = <e^{imφ(t)}>, the dephasing factor of one fluctuator.
///
/// Over-damped (γ > mν) and under-damped (γ < mν) branches are evaluated in
/// forms that stay finite for γt up to ~1e308: e^{-γt}cosh(κt) is expanded
/// into e^{-(γ-κ)t} and e^{-(γ+κ)t} with γ-κ = (mν)²/(γ+κ), and sinh(κt)/κ
/// and sin(κt)/κ use their Taylor series for κt < 1e-4. Within a relative
/// window of 1e-9 around γ = mν the limit e^{-γt}(1+γt) is returned.
double d_coefficient(const RtnParams& params, double t);

/// Same, with γ = 0 allowed (frozen fluctuator: cos(mνt)). Used by callers
/// that integrate over rates down to an exactly degenerate lower end.
double d_coefficient(double gamma, int m, double t);

/// Eq.-(9)-type phase law of φ(t) = -ν∫c: two atoms of weight ½e^{-γt}
/// at φ = ±νt and a continuous density on |φ| < νt.
struct PhaseDensity {
  double atom_weight = 0.0;  ///< weight of each atom at ±νt
  double continuous = 0.0;   ///< density of the continuous part at φ
};

/// Throws std::domain_error for t <= 0 or gamma <= 0. For |φ| >= νt the
/// continuous density is 0 (the atoms are reported regardless of φ).
PhaseDensity phase_pdf(double gamma, double t, double phi);

/// Piecewise-constant c(t) in {-1, +1}.
struct RtnTrajectory {
  std::vector<double> flip_times;  ///< strictly increasing, in (0, horizon]
  int initial_value = 1;
  double horizon = 0.0;
};

struct RtnPhase {
  double value = 0.0;  ///< radians
};

RtnTrajectory sample_trajectory(double gamma, double horizon, RngStream& rng);

/// Exact φ(t) = -ν∫₀ᵗ c. Throws std::domain_error for t outside [0, horizon].
RtnPhase phase_of(const RtnTrajectory& trajectory, double t);

/// c(t) of the trajectory (right-continuous).
int value_at(const RtnTrajectory& trajectory, double t);

/// Lorentzian S_RTN(f, γ) = 4γ / (4π²f² + γ²).
double rtn_psd(double gamma, double f);

/// Advances one fluctuator across an interval of length dt without
/// enumerating its flips: the flip count is Poisson(γ dt) and, given n
/// flips, the time spent in the starting value is dt·Beta(⌈(n+1)/2⌉,
/// n+1-⌈(n+1)/2⌉) (sum of alternate Dirichlet spacings). Returns ∫c over
/// the interval and updates \p value to c at the interval end. Statistically
/// identical to sample_trajectory followed by phase_of.
double advance_telegraph(double gamma, double dt, int& value, RngStream& rng);

}  // namespace rtnq
