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
#include "rtnq/mc_engine.hpp"
#include "rtnq/rtn.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace rtnq;

namespace {

McConfig make(Scenario s, Topology t, RateDistribution dist, std::size_t n, std::size_t points = 11) {
  McConfig c;
  c.scenario.scenario = s;
  c.scenario.topology = t;
  c.scenario.dist = dist;
  c.scenario.time_grid = uniform_time_grid(5.0, points);
  c.n_trajectories = n;
  c.threads = 1;
  return c;
}

}  // namespace

TEST_CASE("single-trajectory evolution") {
  CHECK((evolve_trajectory(0, 0) - phi_plus()).norm() < 1e-15);
  CHECK((evolve_trajectory(0.3, M_PI / 2 - 0.3) - Complex(0, 1) * psi_plus()).norm() < 1e-15);
  for (double a : {-1.3, 0.2, 2.9}) {
    for (double b : {0.0, 0.7, -4.1}) {
      const Vector4c psi = evolve_trajectory(a, b);
      CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(bell_coefficient(psi) == doctest::Approx(std::cos(2 * (a + b))).epsilon(1e-13));
    }
  }
}

TEST_CASE("configuration checks") {
  auto c = make(Scenario::SingleRandomFluctuator, Topology::Separate, RateDistribution::point_mass(1.0), 999);
  CHECK_THROWS(c.validate());
  c.n_trajectories = 1000;
  CHECK_NOTHROW(c.validate());
  c.scenario.time_grid.clear();
  CHECK_THROWS(c.validate());
}

TEST_CASE("fixed rate reproduces the plain telegraph coefficients") {
  const double g = 1.3;
  for (auto topo : {Topology::Separate, Topology::Common}) {
    const auto est = estimate_coefficient(make(Scenario::SingleRandomFluctuator, topo, RateDistribution::point_mass(g), 20000));
    CHECK(est.front().coeff_mean == 1.0);
    CHECK(est.front().coeff_stderr == 0.0);
    for (const auto& e : est) {
      const double d = topo == Topology::Separate ? std::pow(d_coefficient(g, 2, e.time), 2) : d_coefficient(g, 4, e.time);
      CHECK(std::abs(e.coeff_mean - d) <= 3 * e.coeff_stderr + 1e-15);
      CHECK(e.off_family_max <= 5 * e.off_family_stderr + 1e-15);
    }
  }
}

TEST_CASE("fixed collection matches the product of D coefficients") {
  for (auto topo : {Topology::Separate, Topology::Common}) {
    const auto cfg = make(Scenario::FixedCollection, topo, RateDistribution(2.0, 1e-4, 1e4), 20000);
    const auto rates = resolve_fixed_rates(cfg.scenario);
    const auto est = estimate_coefficient(cfg, rates);
    for (const auto& e : est) {
      const double x = scenario_coefficient(cfg.scenario, rates, e.time);
      CHECK(std::abs(e.coeff_mean - x) <= 3 * e.coeff_stderr + 1e-15);
    }
  }
}

TEST_CASE("standard error scales as one over root n") {
  const auto dist = RateDistribution(2.0, 1e-4, 1e4);
  const auto small = estimate_coefficient(make(Scenario::SingleRandomFluctuator, Topology::Separate, dist, 5000));
  const auto large = estimate_coefficient(make(Scenario::SingleRandomFluctuator, Topology::Separate, dist, 20000));
  for (std::size_t i = 1; i < small.size(); ++i) {
    CHECK(small[i].coeff_stderr / large[i].coeff_stderr == doctest::Approx(2.0).epsilon(0.2));
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto cfg = make(Scenario::RandomRateCollection, Topology::Common, RateDistribution(1.0, 1e-4, 1e4), 6000);
  cfg.scenario.n_fluctuators = 3;
  const auto one = estimate_coefficient(cfg);
  cfg.threads = 3;
  const auto three = estimate_coefficient(cfg);
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].coeff_mean == three[i].coeff_mean);
    CHECK(one[i].coeff_stderr == three[i].coeff_stderr);
    CHECK((one[i].density_matrix.elements() - three[i].density_matrix.elements()).norm() == 0.0);
  }
}

TEST_CASE("correlations of the averaged state") {
  auto cfg = make(Scenario::FixedCollection, Topology::Separate, RateDistribution(1.0, 1e-4, 1e4), 20000);
  cfg.scenario.n_fluctuators = 100;
  cfg.scenario.time_grid = {0.0, 10.0, 20.0};
  const auto series = estimate_correlations(cfg);
  CHECK(series.points.front().negativity == 1.0);
  CHECK(series.points.front().discord == 1.0);
  const auto& last = series.points.back();
  // fully decohered: analytic N is far below the noise floor
  CHECK(scenario_coefficient(cfg.scenario, series.rates, 20.0) < 1e-6);
  CHECK(last.negativity <= 3 * last.negativity_stderr);
  CHECK(last.discord_band_lo == 0.0);
  CHECK(last.discord <= last.discord_band_hi);
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    // Bell-basis coherences are noise; the reported values use the populations only
    CHECK(series.points[i].negativity == doctest::Approx(std::abs(series.estimates[i].coeff_mean)).epsilon(1e-12));
    CHECK(series.points[i].discord == doctest::Approx(h_function(series.estimates[i].coeff_mean)).epsilon(1e-10));
    CHECK(series.points[i].negativity <= negativity(series.estimates[i].density_matrix) + 1e-12);
  }
}

TEST_CASE("phase factor estimates from explicit trajectories") {
  const std::vector<double> times{0.0, 0.5, 1.0, 2.0, 4.0};
  for (int m : {2, 4}) {
    for (double g : {0.1, 2.0, 50.0}) {
      const auto est = estimate_phase_factor(g, m, times, 20000, 5, 1);
      for (const auto& e : est) CHECK(std::abs(e.mean - d_coefficient(g, m, e.time)) <= 3 * e.stderr + 1e-15);
    }
  }
  RngStream rng(8, 0);
  const auto traj = sample_trajectory(3.0, 4.0, rng);
  const auto phases = phases_on_grid(traj, times);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK(phases[i] == doctest::Approx(phase_of(traj, times[i]).value).epsilon(1e-12));
}
