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

#include "stats.hpp"
#include "rtnq/rtn.hpp"
#include "rtnq/spectral_estimation.hpp"

#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace rtnq;
using boost::math::quadrature::gauss_kronrod;

namespace {

// Telegraph phase simulated with the standard library only.
double reference_phase(double gamma, double t, std::mt19937_64& gen) {
  std::exponential_distribution<double> wait(gamma);
  int c = std::bernoulli_distribution(0.5)(gen) ? 1 : -1;
  double now = 0.0, integral = 0.0;
  while (true) {
    const double next = now + wait(gen);
    if (next >= t) break;
    integral += c * (next - now);
    now = next;
    c = -c;
  }
  return -(integral + c * (t - now));
}

double continuous_integral(double gamma, double t, const std::function<double(double)>& weight) {
  auto f = [&](double phi) { return phase_pdf(gamma, t, phi).continuous * weight(phi); };
  return gauss_kronrod<double, 31>::integrate(f, -t, t, 20, 1e-13);
}

}  // namespace

TEST_CASE("D coefficient reference values") {
  for (int m : {2, 4}) {
    for (double g : {0.01, 1.0, 10.0}) CHECK(d_coefficient(RtnParams(g, m), 0.0) == 1.0);
    for (double t : {0.1, 1.0, 7.3}) CHECK(d_coefficient(1e-12, m, t) == doctest::Approx(std::cos(m * t)).epsilon(1e-9));
  }
  CHECK(d_coefficient(RtnParams(1.0, 2), 1.0) == doctest::Approx(0.15057436514588762).epsilon(1e-14));
  CHECK_THROWS_AS(d_coefficient(RtnParams(1.0, 2), -1.0), std::domain_error);
  CHECK_THROWS_AS(RtnParams(-1.0, 2), std::domain_error);
  CHECK_THROWS_AS(RtnParams(1.0, 3), std::domain_error);
}

TEST_CASE("D coefficient agrees with an independent trajectory average") {
  std::mt19937_64 gen(2024);
  std::vector<double> c;
  c.reserve(1000000);
  for (int i = 0; i < 1000000; ++i) c.push_back(std::cos(2.0 * reference_phase(1.0, 1.0, gen)));
  const auto m = oracle::moments(c);
  CHECK(std::abs(m.mean - 0.15057436514588762) < 3 * m.stderr);
}

TEST_CASE("D coefficient across the critical damping point") {
  for (int m : {2, 4}) {
    for (double t : {0.3, 2.0, 15.0}) {
      const double crit = std::exp(-m * t) * (1 + m * t);
      // |∂D/∂γ| ≤ t near the branch, so any excess is a cancellation error
      for (double eps : {1e-13, 1e-11, 1e-9, 1e-8, 1e-7, 1e-5}) {
        const double bound = 2 * eps * m * t + 1e-13;
        CHECK(std::abs(d_coefficient(m * (1 + eps), m, t) - crit) < bound);
        CHECK(std::abs(d_coefficient(m * (1 - eps), m, t) - crit) < bound);
      }
    }
  }
  // overdamped: positive and decreasing
  double prev = 1.0;
  for (int k = 1; k <= 400; ++k) {
    const double d = d_coefficient(10.0, 2, 0.05 * k);
    CHECK(d > 0.0);
    CHECK(d < prev);
    prev = d;
  }
  // far overdamped: decay rate γ - κ ≈ m²/2γ
  CHECK(d_coefficient(1e4, 2, 10.0) == doctest::Approx(std::exp(-2e-4 * 10.0)).epsilon(1e-6));
}

TEST_CASE("phase distribution is normalised and reproduces D") {
  CHECK(phase_pdf(0.0, 1.0, 0.3).atom_weight == 0.5);
  CHECK(phase_pdf(0.0, 1.0, 0.3).continuous == 0.0);
  CHECK(phase_pdf(1.0, 1.0, 1.5).continuous == 0.0);
  CHECK(phase_pdf(2.0, 0.0, 0.0).atom_weight == 0.5);
  CHECK_THROWS_AS(phase_pdf(-1.0, 1.0, 0.0), std::domain_error);
  for (double g : {0.05, 0.5, 1.0, 3.0, 10.0}) {
    for (double t : {0.2, 1.0, 2.5, 6.0}) {
      const double atoms = 2 * phase_pdf(g, t, 0.0).atom_weight;
      CHECK(atoms == doctest::Approx(std::exp(-g * t)).epsilon(1e-14));
      const double mass = atoms + continuous_integral(g, t, [](double) { return 1.0; });
      CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
      for (int m : {2, 4}) {
        const double fourier = atoms * std::cos(m * t) + continuous_integral(g, t, [m](double p) { return std::cos(m * p); });
        CHECK(std::abs(fourier - d_coefficient(g, m, t)) < 1e-6);
      }
    }
  }
}

TEST_CASE("flip counts follow the Poisson law") {
  RngStream rng(9, 1);
  int any = 0;
  for (int i = 0; i < 1000000; ++i) any += !sample_trajectory(0.001, 1.0, rng).flip_times.empty();
  const double p = 1 - std::exp(-0.001);
  CHECK(std::abs(any / 1e6 - p) < 3 * std::sqrt(p * (1 - p) / 1e6));

  std::vector<double> counts;
  for (int i = 0; i < 100000; ++i) counts.push_back(static_cast<double>(sample_trajectory(2.0, 3.0, rng).flip_times.size()));
  const auto m = oracle::moments(counts);
  CHECK(std::abs(m.mean - 6.0) < 3 * m.stderr);
}

TEST_CASE("reproducible trajectories") {
  RngStream a(77, 5), b(77, 5);
  const auto ta = sample_trajectory(3.0, 10.0, a);
  const auto tb = sample_trajectory(3.0, 10.0, b);
  CHECK(ta.flip_times == tb.flip_times);
  CHECK(ta.initial_value == tb.initial_value);
}

TEST_CASE("phase of hand-made trajectories") {
  RtnTrajectory none{{}, 1, 2.0};
  CHECK(phase_of(none, 1.5).value == doctest::Approx(-1.5));
  RtnTrajectory one{{0.75}, 1, 2.0};
  CHECK(std::abs(phase_of(one, 1.5).value) < 1e-15);
  CHECK(value_at(one, 0.5) == 1);
  CHECK(value_at(one, 1.0) == -1);
  CHECK_THROWS_AS(phase_of(one, 2.5), std::domain_error);
  CHECK_THROWS_AS(phase_of(one, -0.1), std::domain_error);
}

TEST_CASE("telegraph autocorrelation decays as exp(-2 gamma tau)") {
  const double gamma = 0.7;
  RngStream rng(3, 0);
  const std::vector<double> taus{0.1, 0.5, 1.0, 2.0};
  std::vector<std::vector<double>> products(taus.size());
  for (int i = 0; i < 100000; ++i) {
    const auto traj = sample_trajectory(gamma, 3.0, rng);
    const int c0 = value_at(traj, 0.5);
    for (std::size_t k = 0; k < taus.size(); ++k) products[k].push_back(c0 * value_at(traj, 0.5 + taus[k]));
  }
  for (std::size_t k = 0; k < taus.size(); ++k) {
    const auto m = oracle::moments(products[k]);
    CHECK(std::abs(m.mean - std::exp(-2 * gamma * taus[k])) < 4 * m.stderr);
  }
}

TEST_CASE("Welch periodogram of a telegraph signal matches the Lorentzian") {
  const double gamma = 1.0, dt = 0.005;
  const std::size_t n = std::size_t{1} << 23;
  RngStream rng(11, 0);
  const auto traj = sample_trajectory(gamma, dt * n, rng);
  std::vector<double> signal(n);
  std::size_t next = 0;
  int c = traj.initial_value;
  for (std::size_t i = 0; i < n; ++i) {
    while (next < traj.flip_times.size() && traj.flip_times[next] <= i * dt) {
      c = -c;
      ++next;
    }
    signal[i] = c;
  }
  const Periodogram p = welch_psd(signal, dt, std::size_t{1} << 15);
  for (double f : log_spaced(gamma / 10, 10 * gamma, 9)) {
    double sum = 0;
    int bins = 0;
    for (std::size_t i = 0; i < p.frequencies.size(); ++i) {
      if (p.frequencies[i] >= f / 1.15 && p.frequencies[i] <= f * 1.15) {
        sum += p.power[i];
        ++bins;
      }
    }
    REQUIRE(bins > 0);
    // flip rate γ means correlation time 1/(2γ)
    CHECK(sum / bins == doctest::Approx(rtn_psd(2 * gamma, f)).epsilon(0.10));
  }
  CHECK(rtn_psd(2.0, 0.0) == doctest::Approx(2.0));
  CHECK(rtn_psd(2.0, 2.0 / (2 * M_PI)) == doctest::Approx(1.0));
}

TEST_CASE("phase histogram matches the phase distribution") {
  const double gamma = 1.0, t = 1.0;
  RngStream rng(21, 0);
  std::vector<double> interior;
  std::size_t atoms_plus = 0, atoms_minus = 0;
  const std::size_t n = 1000000;
  for (std::size_t i = 0; i < n; ++i) {
    const auto traj = sample_trajectory(gamma, t, rng);
    const double phi = phase_of(traj, t).value;
    if (traj.flip_times.empty()) {
      (phi > 0 ? atoms_plus : atoms_minus) += 1;
    } else {
      interior.push_back(phi);
    }
  }
  const double atom = phase_pdf(gamma, t, 0.0).atom_weight;
  CHECK(std::abs(atoms_plus / double(n) - atom) < 3 * std::sqrt(atom * (1 - atom) / n));
  CHECK(std::abs(atoms_minus / double(n) - atom) < 3 * std::sqrt(atom * (1 - atom) / n));

  // conditional CDF of the continuous part on a fine grid
  const int cells = 4000;
  std::vector<double> grid(cells + 1), cdf(cells + 1, 0.0);
  for (int i = 0; i <= cells; ++i) grid[i] = -t + 2 * t * i / cells;
  auto dens = [&](double p) { return phase_pdf(gamma, t, p).continuous; };
  for (int i = 0; i < cells; ++i) cdf[i + 1] = cdf[i] + gauss_kronrod<double, 15>::integrate(dens, grid[i], grid[i + 1]);
  const double total = cdf.back();
  CHECK(total == doctest::Approx(1 - 2 * atom).epsilon(1e-8));
  auto conditional = [&](double x) {
    const double pos = (x + t) / (2 * t) * cells;
    const int i = std::clamp(static_cast<int>(pos), 0, cells - 1);
    const double w = pos - i;
    return ((1 - w) * cdf[i] + w * cdf[i + 1]) / total;
  };
  const double d = oracle::ks_statistic(interior, conditional);
  CHECK(oracle::ks_pvalue(d, interior.size()) > 0.01);
}

TEST_CASE("interval sampler agrees with explicit trajectories") {
  for (double gamma : {0.3, 2.0, 25.0}) {
    const double dt = 0.8;
    RngStream a(31, 0), b(31, 1);
    std::vector<double> explicit_phase, sampled, explicit_end, sampled_end;
    for (int i = 0; i < 40000; ++i) {
      auto traj = sample_trajectory(gamma, dt, a);
      traj.initial_value = 1;
      explicit_phase.push_back(-phase_of(traj, dt).value);
      explicit_end.push_back(value_at(traj, dt));
      int v = 1;
      sampled.push_back(advance_telegraph(gamma, dt, v, b));
      sampled_end.push_back(v);
    }
    const double d = oracle::ks_two_sample(explicit_phase, sampled);
    CHECK(oracle::ks_two_sample_pvalue(d, explicit_phase.size(), sampled.size()) > 0.01);
    const auto me = oracle::moments(explicit_end), ms = oracle::moments(sampled_end);
    CHECK(std::abs(me.mean - ms.mean) < 4 * std::hypot(me.stderr, ms.stderr));
    CHECK(std::abs(ms.mean - std::exp(-2 * gamma * dt)) < 4 * ms.stderr + 1e-12);
  }
}
