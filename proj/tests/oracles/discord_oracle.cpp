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

#include "discord_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rtnq::oracle {

std::vector<Eigen::Vector3d> fibonacci_sphere(int count) {
  std::vector<Eigen::Vector3d> pts;
  const double golden = M_PI * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < count; ++i) {
    const double z = 1.0 - 2.0 * (i + 0.5) / count;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * i;
    pts.emplace_back(r * std::cos(phi), r * std::sin(phi), z);
  }
  return pts;
}

double discord_bruteforce_oracle(const TwoQubitDensityMatrix& rho, int grid_size) {
  if (grid_size < 64) throw std::invalid_argument("discord oracle needs at least 64 directions");
  const Eigen::Matrix2cd rho_a = partial_trace(rho, Subsystem::A);
  const Eigen::Matrix2cd rho_b = partial_trace(rho, Subsystem::B);
  const double s_a = von_neumann_entropy(Eigen::MatrixXcd(rho_a));
  const double s_b = von_neumann_entropy(Eigen::MatrixXcd(rho_b));
  const double mutual = s_a + s_b - von_neumann_entropy(rho);

  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

  auto classical = [&](const Eigen::Vector3d& n) {
    const Eigen::Matrix2cd ns = n(0) * sx + n(1) * sy + n(2) * sz;
    double conditional = 0.0;
    for (int sign : {1, -1}) {
      const Eigen::Matrix2cd proj = 0.5 * (id + static_cast<double>(sign) * ns);
      Matrix4c big;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            for (int l = 0; l < 2; ++l) big(2 * i + k, 2 * j + l) = id(i, j) * proj(k, l);
      const Matrix4c post = big * rho.elements() * big;
      const double p = post.trace().real();
      if (p <= 1e-15) continue;
      Eigen::Matrix2cd cond = Eigen::Matrix2cd::Zero();
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) cond(i, j) += post(2 * i + k, 2 * j + k);
      cond /= p;
      cond = 0.5 * (cond + cond.adjoint()).eval();
      conditional += p * von_neumann_entropy(Eigen::MatrixXcd(cond));
    }
    return s_a - conditional;
  };

  double best = -1.0;
  Eigen::Vector3d best_dir;
  for (const Eigen::Vector3d& n : fibonacci_sphere(grid_size)) {
    const double c = classical(n);
    if (c > best) {
      best = c;
      best_dir = n;
    }
  }

  // Compass search in spherical angles around the best lattice point.
  auto direction = [](double theta, double phi) {
    return Eigen::Vector3d(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
  };
  double theta = std::acos(std::clamp(best_dir(2), -1.0, 1.0));
  double phi = std::atan2(best_dir(1), best_dir(0));
  double step = 2.0 * std::sqrt(4.0 * M_PI / grid_size);
  while (step > 1e-9) {
    bool moved = false;
    for (auto [dt, dp] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const double c = classical(direction(theta + dt * step, phi + dp * step));
      if (c > best) {
        best = c;
        theta += dt * step;
        phi += dp * step;
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  return mutual - best;
}

}  // namespace rtnq::oracle
