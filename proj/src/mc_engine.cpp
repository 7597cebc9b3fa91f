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

#include "rtnq/mc_engine.hpp"

#include "detail/parallel.hpp"
#include "rtnq/correlations.hpp"
#include "rtnq/noise_spectra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace rtnq {

namespace {

using LongComplex = std::complex<long double>;

constexpr std::size_t kMaxBatches = 64;

std::size_t batch_size_for(std::size_t n) {
  return std::max<std::size_t>(1000, (n + kMaxBatches - 1) / kMaxBatches);
}

// Elements of the computational-basis matrix that a Bell mixture of |φ+>
// and |ψ+> leaves at zero.
bool off_family(int i, int j) {
  const bool outer = (i == 0 || i == 3);
  const bool inner_j = (j == 1 || j == 2);
  const bool outer_j = (j == 0 || j == 3);
  return outer ? inner_j : outer_j;
}

struct TimeAccumulator {
  long double coeff = 0.0L;
  long double coeff_sq = 0.0L;
  long double off = 0.0L;  // sin 2θ, the off-family amplitude
  long double off_sq = 0.0L;
  std::array<LongComplex, 16> rho{};

  void merge(const TimeAccumulator& other) {
    coeff += other.coeff;
    coeff_sq += other.coeff_sq;
    off += other.off;
    off_sq += other.off_sq;
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] += other.rho[k];
  }
};

using BatchResult = std::vector<TimeAccumulator>;

void merge_into(BatchResult& into, const BatchResult& from) {
  for (std::size_t i = 0; i < into.size(); ++i) into[i].merge(from[i]);
}

// Pairwise reduction in index order; the tree shape depends only on the
// number of batches.
BatchResult reduce_batches(std::vector<BatchResult>& batches) {
  for (std::size_t stride = 1; stride < batches.size(); stride *= 2) {
    for (std::size_t i = 0; i + stride < batches.size(); i += 2 * stride) {
      merge_into(batches[i], batches[i + stride]);
    }
  }
  return std::move(batches.front());
}

struct Fluctuator {
  double rate;
  int value;
};

// Fluctuator sets of one trajectory. For a common environment both qubits
// read the phase of set a.
struct Environment {
  std::vector<Fluctuator> a;
  std::vector<Fluctuator> b;
};

Environment draw_environment(const McConfig& config, const FluctuatorRates& fixed, RngStream& rng) {
  const ScenarioConfig& sc = config.scenario;
  const bool separate = sc.topology == Topology::Separate;
  Environment env;
  const auto fill = [&rng](std::vector<Fluctuator>& set, std::span<const double> rates) {
    set.clear();
    for (double r : rates) set.push_back({r, rng.sign()});
  };
  const auto draw = [&](std::vector<Fluctuator>& set, std::size_t count) {
    set.clear();
    for (std::size_t j = 0; j < count; ++j) {
      const double r = sample_rate(sc.dist, rng);
      set.push_back({r, rng.sign()});
    }
  };
  switch (sc.scenario) {
    case Scenario::SingleRandomFluctuator:
      draw(env.a, 1);
      if (separate) draw(env.b, 1);
      break;
    case Scenario::FixedCollection:
      fill(env.a, fixed.a);
      if (separate) fill(env.b, fixed.b);
      break;
    case Scenario::RandomRateCollection: {
      const auto n = static_cast<std::size_t>(sc.n_fluctuators);
      draw(env.a, n);
      if (separate) draw(env.b, n);
      break;
    }
  }
  return env;
}

double advance_set(std::vector<Fluctuator>& set, double dt, RngStream& rng) {
  double integral = 0.0;
  for (Fluctuator& f : set) integral += advance_telegraph(f.rate, dt, f.value, rng);
  return integral;
}

BatchResult run_batch(const McConfig& config, const FluctuatorRates& fixed, std::size_t count,
                      std::uint64_t stream) {
  const std::vector<double>& times = config.scenario.time_grid;
  const bool separate = config.scenario.topology == Topology::Separate;
  BatchResult acc(times.size());
  RngStream rng(config.scenario.seed, stream);
  for (std::size_t n = 0; n < count; ++n) {
    Environment env = draw_environment(config, fixed, rng);
    double integral_a = 0.0;
    double integral_b = 0.0;
    double previous = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double dt = times[i] - previous;
      previous = times[i];
      if (dt > 0.0) {
        integral_a += advance_set(env.a, dt, rng);
        if (separate) integral_b += advance_set(env.b, dt, rng);
      }
      const double phase_a = -kCoupling * integral_a;
      const double phase_b = separate ? -kCoupling * integral_b : phase_a;
      const Vector4c psi = evolve_trajectory(phase_a, phase_b);
      const double coeff = bell_coefficient(psi);
      const double off = std::sin(2.0 * (phase_a + phase_b));
      TimeAccumulator& slot = acc[i];
      slot.coeff += coeff;
      slot.coeff_sq += static_cast<long double>(coeff) * coeff;
      slot.off += off;
      slot.off_sq += static_cast<long double>(off) * off;
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          const Complex e = psi(r) * std::conj(psi(c));
          slot.rho[static_cast<std::size_t>(4 * r + c)] += LongComplex(e.real(), e.imag());
        }
      }
    }
  }
  return acc;
}

double stderr_of(long double sum, long double sum_sq, std::size_t n) {
  const long double nn = static_cast<long double>(n);
  const long double mean = sum / nn;
  const long double var = std::max(0.0L, (sum_sq - nn * mean * mean) / (nn - 1.0L));
  return static_cast<double>(std::sqrt(var / nn));
}

}  // namespace

void McConfig::validate() const {
  scenario.validate();
  if (n_trajectories < kMinTrajectories) {
    std::ostringstream msg;
    msg << "trajectories: " << n_trajectories << " is below the minimum of " << kMinTrajectories;
    throw std::invalid_argument(msg.str());
  }
}

Vector4c evolve_trajectory(double phase_a, double phase_b) {
  const auto local = [](double phi) {
    Eigen::Matrix2cd u;
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    u << c, Complex(0.0, s), Complex(0.0, s), c;  // exp(iφσx)
    return u;
  };
  const Eigen::Matrix2cd ua = local(phase_a);
  const Eigen::Matrix2cd ub = local(phase_b);
  Matrix4c u;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) u(2 * i + k, 2 * j + l) = ua(i, j) * ub(k, l);
  return u * phi_plus();
}

double bell_coefficient(const Vector4c& state) {
  return std::norm(phi_plus().dot(state)) - std::norm(psi_plus().dot(state));
}

std::vector<McEstimate> estimate_coefficient(const McConfig& config, const FluctuatorRates& rates) {
  config.validate();
  if (config.scenario.scenario == Scenario::FixedCollection) {
    if (rates.a.empty() || (config.scenario.topology == Topology::Separate && rates.b.empty())) {
      throw std::invalid_argument("fixed collection needs resolved rates for every bath");
    }
  }
  const std::size_t n = config.n_trajectories;
  const std::size_t batch = batch_size_for(n);
  const std::size_t batches = (n + batch - 1) / batch;
  std::vector<BatchResult> results(batches);
  detail::parallel_for(batches, config.threads, [&](std::size_t k) {
    const std::size_t count = std::min(batch, n - k * batch);
    results[k] = run_batch(config, rates, count, k);
  });
  const BatchResult total = reduce_batches(results);

  std::vector<McEstimate> out;
  out.reserve(total.size());
  const long double nn = static_cast<long double>(n);
  for (std::size_t i = 0; i < total.size(); ++i) {
    const TimeAccumulator& a = total[i];
    Matrix4c rho;
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        const LongComplex v = a.rho[static_cast<std::size_t>(4 * r + c)] / nn;
        rho(r, c) = Complex(static_cast<double>(v.real()), static_cast<double>(v.imag()));
      }
    }
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    double off_max = 0.0;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        if (off_family(r, c)) off_max = std::max(off_max, std::abs(rho(r, c)));
    McEstimate e;
    e.time = config.scenario.time_grid[i];
    if (e.time == 0.0) {
      // Nothing has evolved; report the initial Bell state without the
      // rounding of 1/√2 amplitudes.
      e.coeff_mean = 1.0;
      e.density_matrix = bell_mixture_to_matrix(BellMixture(1.0));
      out.push_back(e);
      continue;
    }
    e.coeff_mean = static_cast<double>(a.coeff / nn);
    e.coeff_stderr = stderr_of(a.coeff, a.coeff_sq, n);
    e.density_matrix = TwoQubitDensityMatrix(rho);
    e.off_family_max = off_max;
    e.off_family_stderr = 0.25 * stderr_of(a.off, a.off_sq, n);
    out.push_back(e);
  }
  return out;
}

namespace {

TwoQubitDensityMatrix bell_diagonal_part(const TwoQubitDensityMatrix& rho) {
  const double s = 1.0 / std::sqrt(2.0);
  Vector4c bell[4];
  bell[0] << s, 0, 0, s;
  bell[1] << s, 0, 0, -s;
  bell[2] << 0, s, s, 0;
  bell[3] << 0, s, -s, 0;
  Matrix4c out = Matrix4c::Zero();
  for (const Vector4c& b : bell) {
    const double w = (b.adjoint() * rho.elements() * b)(0, 0).real();
    out += w * b * b.adjoint();
  }
  return TwoQubitDensityMatrix(out / out.trace().real());
}

}  // namespace

std::vector<McEstimate> estimate_coefficient(const McConfig& config) {
  return estimate_coefficient(config, resolve_fixed_rates(config.scenario));
}

McCorrelationSeries estimate_correlations(const McConfig& config) {
  McCorrelationSeries series;
  series.config = config;
  series.rates = resolve_fixed_rates(config.scenario);
  series.estimates = estimate_coefficient(config, series.rates);
  for (const McEstimate& e : series.estimates) {
    McCorrelationPoint p;
    p.time = e.time;
    if (e.time == 0.0) {
      p.negativity = p.discord = p.discord_band_lo = p.discord_band_hi = 1.0;
      series.points.push_back(p);
      continue;
    }
    const TwoQubitDensityMatrix diagonal = bell_diagonal_part(e.density_matrix);
    p.negativity = negativity(diagonal);
    p.negativity_stderr = e.coeff_stderr;
    p.discord = discord_bell_diagonal(diagonal);
    const double band = 3.0 * e.coeff_stderr;
    p.discord_band_lo = h_function(std::max(0.0, p.negativity - band));
    p.discord_band_hi = h_function(std::min(1.0, p.negativity + band));
    series.points.push_back(p);
  }
  return series;
}

std::vector<double> phases_on_grid(const RtnTrajectory& trajectory, std::span<const double> times) {
  std::vector<double> out;
  out.reserve(times.size());
  double integral = 0.0;
  double last = 0.0;
  int c = trajectory.initial_value;
  std::size_t next_flip = 0;
  for (double t : times) {
    if (t < last || t > trajectory.horizon) {
      throw std::domain_error("phases_on_grid: times must be ascending and within the horizon");
    }
    while (next_flip < trajectory.flip_times.size() && trajectory.flip_times[next_flip] < t) {
      const double flip = trajectory.flip_times[next_flip++];
      integral += c * (flip - last);
      last = flip;
      c = -c;
    }
    integral += c * (t - last);
    last = t;
    out.push_back(-kCoupling * integral);
  }
  return out;
}

std::vector<PhaseFactorEstimate> estimate_phase_factor(double gamma, int m, std::span<const double> times,
                                                       std::size_t n_trajectories, std::uint64_t seed,
                                                       unsigned threads) {
  const RtnParams params(gamma, m);  // validates
  if (times.empty()) throw std::invalid_argument("estimate_phase_factor: empty time grid");
  if (n_trajectories < 2) throw std::invalid_argument("estimate_phase_factor: need at least two trajectories");
  const std::size_t batch = batch_size_for(n_trajectories);
  const std::size_t batches = (n_trajectories + batch - 1) / batch;
  const double horizon = std::max(times.back(), 1e-300);
  std::vector<std::vector<std::array<long double, 2>>> results(batches);
  detail::parallel_for(batches, threads, [&](std::size_t k) {
    const std::size_t count = std::min(batch, n_trajectories - k * batch);
    RngStream rng(seed, k);
    std::vector<std::array<long double, 2>> acc(times.size(), {0.0L, 0.0L});
    for (std::size_t n = 0; n < count; ++n) {
      const RtnTrajectory traj = sample_trajectory(params.gamma(), horizon, rng);
      const std::vector<double> phases = phases_on_grid(traj, times);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const double v = std::cos(m * phases[i]);
        acc[i][0] += v;
        acc[i][1] += static_cast<long double>(v) * v;
      }
    }
    results[k] = std::move(acc);
  });
  for (std::size_t stride = 1; stride < batches; stride *= 2) {
    for (std::size_t i = 0; i + stride < batches; i += 2 * stride) {
      for (std::size_t t = 0; t < times.size(); ++t) {
        results[i][t][0] += results[i + stride][t][0];
        results[i][t][1] += results[i + stride][t][1];
      }
    }
  }
  std::vector<PhaseFactorEstimate> out;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const auto& s = results[0][i];
    out.push_back({times[i], static_cast<double>(s[0] / static_cast<long double>(n_trajectories)),
                   stderr_of(s[0], s[1], n_trajectories)});
  }
  return out;
}

}  // namespace rtnq
