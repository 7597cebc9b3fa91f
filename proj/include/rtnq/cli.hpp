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

#include "rtnq/config.hpp"
#include "rtnq/dynamics.hpp"
#include "rtnq/mc_engine.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace rtnq {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitChecksFailed = 1,  ///< validate ran but at least one check failed
  kExitSchema = 2,
  kExitNumerical = 3,
};

/// Entry point of the rtnq tool; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Building blocks of the subcommands, exposed for tests.

/// CSV text of a run: t,coeff,negativity,discord[,mc_coeff,mc_stderr].
std::string series_csv(const CorrelationSeries& series, const std::vector<McEstimate>* mc = nullptr);

struct ValidationReport {
  nlohmann::json json;
  bool passed = false;
};

/// Analytic vs Monte Carlo comparison plus the Q = h(N) identity on the
/// options' grid.
ValidationReport validate_scenario(const RunOptions& options);

struct PsdResult {
  std::vector<double> frequencies;
  std::vector<double> analytic;
  std::vector<double> collection;   ///< (1/N_f) Σ_j S_RTN(f, γ_j)
  std::vector<double> periodogram;  ///< Welch estimate of the same normalised sum
  std::vector<double> rates;
  double band_lo = 0.0;
  double band_hi = 0.0;
  double slope_analytic = 0.0;
  double slope_collection = 0.0;
  double slope_periodogram = 0.0;
};

PsdResult compute_psd(const RunOptions& options);
std::string psd_csv(const PsdResult& psd);

}  // namespace rtnq
