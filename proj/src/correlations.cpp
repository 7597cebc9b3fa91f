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

#include "rtnq/correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtnq {

namespace {

// Arguments this close to zero are roundoff of a vanishing eigenvalue.
constexpr double kZeroArgTol = 1e-12;

double xlog2x(double y) { return y > 0.0 ? y * std::log2(y) : 0.0; }

}  // namespace

double negativity(const TwoQubitDensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(partial_transpose(rho, Subsystem::B),
                                                 Eigen::EigenvaluesOnly);
  double negative_sum = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < 0.0) negative_sum += lambda;
  }
  return std::min(1.0, 2.0 * std::abs(negative_sum));
}

double discord_bell_diagonal(double c1, double c2, double c3) {
  const std::array<double, 4> args = {1.0 - c1 - c2 - c3, 1.0 - c1 + c2 + c3,
                                      1.0 + c1 - c2 + c3, 1.0 + c1 + c2 - c3};
  for (double a : args) {
    if (!(a >= -kZeroArgTol)) {
      std::ostringstream msg;
      msg << "Bloch vector (" << c1 << ", " << c2 << ", " << c3
          << ") is not a valid Bell-diagonal state";
      throw std::domain_error(msg.str());
    }
  }
  double q = 0.0;
  for (double a : args) q += xlog2x(std::max(a, 0.0));
  q *= 0.25;
  const double c = std::max({std::abs(c1), std::abs(c2), std::abs(c3)});
  q -= 0.5 * xlog2x(std::max(1.0 - c, 0.0)) + 0.5 * xlog2x(1.0 + c);
  return std::clamp(q, 0.0, 1.0);
}

double discord_bell_diagonal(const TwoQubitDensityMatrix& rho) {
  const Eigen::Vector3d c = correlation_vector(rho);
  return discord_bell_diagonal(c(0), c(1), c(2));
}

double h_function(double x) {
  if (!(std::abs(x) <= 1.0)) {
    std::ostringstream msg;
    msg << "h(x) requires |x| <= 1, got " << x;
    throw std::domain_error(msg.str());
  }
  return 0.5 * (xlog2x(1.0 + x) + xlog2x(1.0 - x));
}

}  // namespace rtnq
