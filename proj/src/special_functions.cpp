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

#include "rtnq/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace rtnq {

namespace {

// Below this the unscaled libstdc++ value times e^{-x} is accurate and finite.
constexpr double kDirectLimit = 500.0;

// Hankel expansion e^{-x} I_v(x) ~ (2πx)^{-1/2} Σ_k (-1)^k a_k(v) / x^k,
// a_k(v) = Π_{j=1..k} (4v² - (2j-1)²) / (k! 8^k).
double asymptotic_scaled(int order, double x) {
  const double mu = 4.0 * order * order;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 60; ++k) {
    const double next = -term * (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (k * 8.0 * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * M_PI * x);
}

double scaled(int order, double x) {
  if (!(x >= 0.0)) throw std::domain_error("scaled Bessel I requires x >= 0");
  if (x < kDirectLimit) {
    return std::exp(-x) * std::cyl_bessel_i(static_cast<double>(order), x);
  }
  return asymptotic_scaled(order, x);
}

}  // namespace

double bessel_i0_scaled(double x) { return scaled(0, x); }
double bessel_i1_scaled(double x) { return scaled(1, x); }

}  // namespace rtnq
