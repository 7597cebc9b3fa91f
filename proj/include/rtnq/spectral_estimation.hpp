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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rtnq {

struct Periodogram {
  std::vector<double> frequencies;  ///< bin centres, excluding DC
  std::vector<double> power;        ///< one-sided PSD
};

/// Welch estimate with a Hann window and 50% overlap. The normalisation is
/// one-sided: for a stationary process with autocovariance R(τ) the expected
/// value is 2∫R(τ)e^{-2πifτ}dτ. Throws std::invalid_argument when the signal
/// is shorter than one segment.
Periodogram welch_psd(std::span<const double> signal, double dt, std::size_t segment_length);

/// Least-squares slope of log10(value) against log10(frequency), using only
/// points with f in [f_lo, f_hi].
double fit_loglog_slope(std::span<const double> frequencies, std::span<const double> values,
                        double f_lo, double f_hi);

/// \p count log-spaced points covering [f_lo, f_hi] inclusive.
std::vector<double> log_spaced(double f_lo, double f_hi, std::size_t count);

/// Averages the periodogram over log-spaced bins centred on \p centres (bin
/// edges at geometric midpoints). Empty bins take the nearest periodogram
/// value.
std::vector<double> log_binned(const Periodogram& p, std::span<const double> centres);

struct CollectionPeriodogramOptions {
  std::size_t segment_length = 1u << 14;
  std::size_t segments = 16;  ///< Welch segments per resolution level
  /// Highest frequency used from a level, as a fraction of its sample rate.
  double upper_fraction = 0.2;
  /// Lowest frequency used from a level, in units of its bin width.
  double lower_bins = 8.0;
};

/// Welch estimate of the spectrum of c(t) = Σ_j c_j(t) for telegraph signals
/// flipping at the given rates, covering [f_lo, f_hi] with as many
/// resolution levels as needed (each level spans upper_fraction·N/lower_bins
/// in frequency). Samples are exact bin averages of c(t), and the boxcar
/// response sinc²(πf dt) is divided out. The result is log-binned onto
/// \p centres.
std::vector<double> collection_periodogram(std::span<const double> flip_rates, std::span<const double> centres,
                                           std::uint64_t seed, const CollectionPeriodogramOptions& options = {});

}  // namespace rtnq
