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

#include <functional>
#include <span>
#include <stdexcept>
#include <string>

namespace rtnq {

struct QuadratureOptions {
  /// Target |error| <= max(abs_tol, rel_tol * ∫|f|).
  double rel_tol = 1e-10;
  double abs_tol = 1e-15;
  /// integrate() only throws when the error exceeds this looser relative
  /// bound (when larger than rel_tol), so rel_tol can be aimed tighter.
  double accept_rel_tol = 0.0;
  int max_intervals = 4000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  double abs_integral = 0.0;  ///< Kronrod estimate of ∫|f|, the scale rel_tol refers to
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult diagnostics)
      : std::runtime_error(what), diagnostics_(diagnostics) {}
  const QuadratureResult& diagnostics() const { return diagnostics_; }

 private:
  QuadratureResult diagnostics_;
};

/// Globally adaptive 15-point Gauss-Kronrod integration. \p breakpoints must
/// be sorted and hold at least the two endpoints; every interior point starts
/// a new panel, so put kinks and branch points there.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const QuadratureOptions& options = {});

/// As integrate_adaptive, but throws QuadratureError when the tolerance is
/// not reached.
double integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const QuadratureOptions& options = {});

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureOptions& options = {});

}  // namespace rtnq
