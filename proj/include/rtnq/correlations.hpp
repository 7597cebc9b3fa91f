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

#include "rtnq/qstate.hpp"

namespace rtnq {

/// One sample of a correlation time series. Time in units of 1/ν,
/// discord in bits.
struct CorrelationPoint {
  double time = 0.0;
  double negativity = 0.0;
  double discord = 0.0;
};

/// N = 2|Σ negative eigenvalues of ρ^{T_B}|.
double negativity(const TwoQubitDensityMatrix& rho);

/// Closed-form discord of the Bell-diagonal state ¼(I + Σ c_j σ_j⊗σ_j).
/// Throws std::domain_error if the Bloch vector is not a valid state; it is
/// never clamped.
double discord_bell_diagonal(double c1, double c2, double c3);

/// Discord of the Bell-diagonal part of ρ (exact when ρ is Bell-diagonal).
double discord_bell_diagonal(const TwoQubitDensityMatrix& rho);

/// h(x) = ½[(1+x)log₂(1+x) + (1-x)log₂(1-x)], with 0·log 0 = 0.
double h_function(double x);

}  // namespace rtnq
