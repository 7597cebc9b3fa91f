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

#include "rtnq/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace rtnq {

namespace {

// Kronrod abscissae (descending) and weights for the G7-K15 pair.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lower;
  double upper;
  double value;
  double error;
  double abs_value;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel kronrod15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), abs_sum * std::abs(half)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    std::span<const double> breakpoints,
                                    const QuadratureOptions& options) {
  if (breakpoints.size() < 2 || !std::is_sorted(breakpoints.begin(), breakpoints.end())) {
    throw std::invalid_argument("quadrature breakpoints must be sorted with at least two entries");
  }
  std::priority_queue<Panel> panels;
  QuadratureResult result;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) {
      panels.push(kronrod15(f, breakpoints[i], breakpoints[i + 1]));
      result.evaluations += 15;
    }
  }
  const auto totals = [&panels]() {
    auto copy = panels;
    std::array<double, 3> sums{0.0, 0.0, 0.0};
    while (!copy.empty()) {
      sums[0] += copy.top().value;
      sums[1] += copy.top().error;
      sums[2] += copy.top().abs_value;
      copy.pop();
    }
    return sums;
  };
  double value = 0.0, error = 0.0, abs_value = 0.0;
  {
    const auto s = totals();
    value = s[0];
    error = s[1];
    abs_value = s[2];
  }
  while (!panels.empty()) {
    const double target = std::max(options.abs_tol, options.rel_tol * abs_value);
    if (error <= target) {
      result.converged = true;
      break;
    }
    if (static_cast<int>(panels.size()) >= options.max_intervals) break;
    const Panel worst = panels.top();
    const double mid = 0.5 * (worst.lower + worst.upper);
    if (!(mid > worst.lower && mid < worst.upper)) break;  // panel at machine resolution
    panels.pop();
    const Panel left = kronrod15(f, worst.lower, mid);
    const Panel right = kronrod15(f, mid, worst.upper);
    result.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    panels.push(left);
    panels.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  const auto s = totals();
  result.value = s[0];
  result.error = s[1];
  result.abs_integral = s[2];
  result.intervals = static_cast<int>(panels.size());
  if (!result.converged) {
    result.converged = result.error <= std::max(options.abs_tol, options.rel_tol * result.abs_integral);
  }
  if (!std::isfinite(result.value)) result.converged = false;
  return result;
}

double integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const QuadratureOptions& options) {
  const QuadratureResult r = integrate_adaptive(f, breakpoints, options);
  const double accept = std::max(options.rel_tol, options.accept_rel_tol);
  const bool acceptable =
      std::isfinite(r.value) && r.error <= std::max(options.abs_tol, accept * r.abs_integral);
  if (!r.converged && !acceptable) {
    std::ostringstream msg;
    msg << "adaptive quadrature on [" << breakpoints.front() << ", " << breakpoints.back()
        << "] did not converge: value " << r.value << ", error estimate " << r.error
        << ", |f| integral " << r.abs_integral << ", rel_tol " << accept << ", "
        << r.intervals << " panels, " << r.evaluations << " evaluations";
    throw QuadratureError(msg.str(), r);
  }
  return r.value;
}

double integrate(const std::function<double(double)>& f, double lower, double upper,
                 const QuadratureOptions& options) {
  const std::array<double, 2> bp = {lower, upper};
  return integrate(f, bp, options);
}

}  // namespace rtnq
