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

#include "rtnq/spectral_estimation.hpp"

#include "rtnq/random.hpp"
#include "rtnq/rtn.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>

namespace rtnq {

namespace {

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

struct PlanDeleter {
  void operator()(fftw_plan p) const { fftw_destroy_plan(p); }
};

}  // namespace

Periodogram welch_psd(std::span<const double> signal, double dt, std::size_t segment_length) {
  if (segment_length < 4 || signal.size() < segment_length) {
    throw std::invalid_argument("welch_psd: signal shorter than one segment");
  }
  const std::size_t n = segment_length;
  const std::size_t step = n / 2;
  const std::size_t bins = n / 2 + 1;

  std::vector<double> window(n);
  double window_power = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n));
    window_power += window[i] * window[i];
  }

  std::unique_ptr<double, FftwDeleter> in(static_cast<double*>(fftw_malloc(sizeof(double) * n)));
  std::unique_ptr<fftw_complex, FftwDeleter> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * bins)));
  std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter> plan(
      fftw_plan_dft_r2c_1d(static_cast<int>(n), in.get(), out.get(), FFTW_ESTIMATE));

  std::vector<double> accum(bins, 0.0);
  std::size_t segments = 0;
  for (std::size_t start = 0; start + n <= signal.size(); start += step) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += signal[start + i];
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) in.get()[i] = (signal[start + i] - mean) * window[i];
    fftw_execute(plan.get());
    for (std::size_t k = 0; k < bins; ++k) {
      const double re = out.get()[k][0];
      const double im = out.get()[k][1];
      accum[k] += re * re + im * im;
    }
    ++segments;
  }

  Periodogram p;
  const double scale = dt / (window_power * static_cast<double>(segments));
  for (std::size_t k = 1; k < bins; ++k) {
    const bool nyquist = (n % 2 == 0) && (k == bins - 1);
    p.frequencies.push_back(static_cast<double>(k) / (static_cast<double>(n) * dt));
    p.power.push_back(accum[k] * scale * (nyquist ? 1.0 : 2.0));
  }
  return p;
}

double fit_loglog_slope(std::span<const double> frequencies, std::span<const double> values,
                        double f_lo, double f_hi) {
  if (frequencies.size() != values.size()) {
    throw std::invalid_argument("fit_loglog_slope: size mismatch");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const double f = frequencies[i];
    if (f < f_lo || f > f_hi || !(values[i] > 0.0)) continue;
    const double x = std::log10(f);
    const double y = std::log10(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("fit_loglog_slope: fewer than two points in band");
  const double nn = static_cast<double>(count);
  return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

std::vector<double> log_spaced(double f_lo, double f_hi, std::size_t count) {
  if (count < 2 || !(f_lo > 0.0) || !(f_hi > f_lo)) {
    throw std::invalid_argument("log_spaced: need count >= 2 and 0 < f_lo < f_hi");
  }
  std::vector<double> out(count);
  const double a = std::log(f_lo);
  const double b = std::log(f_hi);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  out.front() = f_lo;
  out.back() = f_hi;
  return out;
}

std::vector<double> log_binned(const Periodogram& p, std::span<const double> centres) {
  std::vector<double> out(centres.size(), 0.0);
  if (p.frequencies.empty()) return out;
  for (std::size_t i = 0; i < centres.size(); ++i) {
    const double lo = i == 0 ? centres[0] * centres[0] / std::sqrt(centres[0] * centres[1])
                             : std::sqrt(centres[i - 1] * centres[i]);
    const double hi = i + 1 == centres.size()
                          ? centres[i] * centres[i] / std::sqrt(centres[i - 1] * centres[i])
                          : std::sqrt(centres[i] * centres[i + 1]);
    const auto first = std::lower_bound(p.frequencies.begin(), p.frequencies.end(), lo);
    const auto last = std::upper_bound(p.frequencies.begin(), p.frequencies.end(), hi);
    if (first < last) {
      double sum = 0.0;
      for (auto it = first; it != last; ++it) sum += p.power[static_cast<std::size_t>(it - p.frequencies.begin())];
      out[i] = sum / static_cast<double>(last - first);
    } else {
      auto it = std::lower_bound(p.frequencies.begin(), p.frequencies.end(), centres[i]);
      if (it == p.frequencies.end()) --it;
      if (it != p.frequencies.begin() &&
          std::abs(std::log(*(it - 1) / centres[i])) < std::abs(std::log(*it / centres[i]))) {
        --it;
      }
      out[i] = p.power[static_cast<std::size_t>(it - p.frequencies.begin())];
    }
  }
  return out;
}

std::vector<double> collection_periodogram(std::span<const double> flip_rates, std::span<const double> centres,
                                           std::uint64_t seed, const CollectionPeriodogramOptions& options) {
  if (flip_rates.empty()) throw std::invalid_argument("collection_periodogram: no rates");
  if (centres.size() < 2) throw std::invalid_argument("collection_periodogram: need at least two frequencies");
  const double f_lo = centres.front();
  const double f_hi = centres.back();
  const double n = static_cast<double>(options.segment_length);
  std::vector<double> out(centres.size(), 0.0);
  std::vector<bool> filled(centres.size(), false);

  double dt = options.upper_fraction / f_hi;
  std::uint64_t level = 0;
  for (;; ++level) {
    const double level_lo = options.lower_bins / (n * dt);
    const double level_hi = options.upper_fraction / dt;
    const std::size_t samples = options.segment_length * (options.segments + 1) / 2;
    RngStream rng(seed, level);
    std::vector<int> values;
    for (std::size_t j = 0; j < flip_rates.size(); ++j) values.push_back(rng.sign());
    std::vector<double> signal(samples);
    for (std::size_t k = 0; k < samples; ++k) {
      double integral = 0.0;
      for (std::size_t j = 0; j < flip_rates.size(); ++j) {
        integral += advance_telegraph(flip_rates[j], dt, values[j], rng);
      }
      signal[k] = integral / dt;
    }
    Periodogram p = welch_psd(signal, dt, options.segment_length);
    for (std::size_t k = 0; k < p.frequencies.size(); ++k) {
      const double x = M_PI * p.frequencies[k] * dt;
      const double boxcar = x > 0.0 ? std::pow(std::sin(x) / x, 2) : 1.0;
      p.power[k] /= boxcar;
    }
    const std::vector<double> binned = log_binned(p, centres);
    for (std::size_t i = 0; i < centres.size(); ++i) {
      const bool in_level = centres[i] >= level_lo && centres[i] <= level_hi;
      if (!filled[i] && (in_level || centres[i] > level_hi)) {
        out[i] = binned[i];
        filled[i] = true;
      }
    }
    if (level_lo <= f_lo || level > 64) {
      for (std::size_t i = 0; i < centres.size(); ++i) {
        if (!filled[i]) out[i] = binned[i];
      }
      break;
    }
    dt *= options.upper_fraction * n / options.lower_bins;
  }
  return out;
}

}  // namespace rtnq
