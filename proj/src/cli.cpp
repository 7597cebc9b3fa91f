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

#include "rtnq/cli.hpp"

#include "rtnq/correlations.hpp"
#include "rtnq/noise_spectra.hpp"
#include "rtnq/quadrature.hpp"
#include "rtnq/rtn.hpp"
#include "rtnq/spectral_estimation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace rtnq {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

constexpr double kIdentityTol = 1e-10;
constexpr double kSigmaLimit = 3.0;
constexpr double kLeakageSigmas = 5.0;

// Flags a subcommand accepts, mirrored onto schema keys.
struct FlagValues {
  std::string config;
  std::string manifest;
  std::optional<std::string> scenario, topology, alpha, gamma_min, gamma_max, nf, fixed_rates, t_max,
      grid_points, trajectories, seed, threads, out, mismatch_m;
  bool mc = false;
};

void add_flags(CLI::App& cmd, FlagValues& f, bool with_mc) {
  cmd.add_option("config,--config", f.config, "Config file (key = value lines)");
  cmd.add_option("--manifest", f.manifest, "Re-run the configuration echoed in a manifest.json");
  cmd.add_option("--scenario", f.scenario, "single | collection | collection-random");
  cmd.add_option("--topology", f.topology, "separate | common");
  cmd.add_option("--alpha", f.alpha, "Spectral exponent in [1, 2]");
  cmd.add_option("--gamma-min", f.gamma_min, "Lower switching rate (units of nu)");
  cmd.add_option("--gamma-max", f.gamma_max, "Upper switching rate (units of nu)");
  cmd.add_option("--nf", f.nf, "Number of fluctuators per bath");
  cmd.add_option("--rates", f.fixed_rates, "Explicit comma-separated fixed rates");
  cmd.add_option("--t-max", f.t_max, "Grid horizon (units of 1/nu)");
  cmd.add_option("--grid-points", f.grid_points, "Number of uniform grid points");
  cmd.add_option("--trajectories", f.trajectories, "Monte Carlo trajectories");
  cmd.add_option("--seed", f.seed, "Master seed for all randomness");
  cmd.add_option("--threads", f.threads, "Worker threads (0 = all cores, 1 = single-threaded)");
  cmd.add_option("--out", f.out, "Output directory");
  if (with_mc) cmd.add_flag("--mc", f.mc, "Add Monte Carlo columns");
  cmd.add_option("--test-mismatch-m", f.mismatch_m, "Negative-control hook: analytic phase multiplier")
      ->group("");
}

RawConfig load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open manifest");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
  if (!j.contains("config") || !j["config"].is_object()) {
    throw ConfigError(path.string() + ": manifest has no config object");
  }
  RawConfig raw;
  const auto& keys = config_keys();
  for (const auto& [key, value] : j["config"].items()) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(path.string() + ": config." + key + ": unknown key");
    }
    if (!value.is_string()) throw ConfigError(path.string() + ": config." + key + ": expected a string");
    raw[key] = {value.get<std::string>(), path.string() + ": config." + key};
  }
  return raw;
}

RunOptions resolve(const FlagValues& f, const CommandDefaults& defaults) {
  RawConfig raw;
  if (!f.manifest.empty()) raw = load_manifest(f.manifest);
  if (!f.config.empty()) {
    for (auto& [k, v] : read_config_file(f.config)) raw[k] = v;
  }
  const auto put = [&raw](const char* key, const char* flag, const std::optional<std::string>& v) {
    if (v) raw[key] = {*v, flag};
  };
  put("scenario", "--scenario", f.scenario);
  put("topology", "--topology", f.topology);
  put("alpha", "--alpha", f.alpha);
  put("gamma_min", "--gamma-min", f.gamma_min);
  put("gamma_max", "--gamma-max", f.gamma_max);
  put("nf", "--nf", f.nf);
  put("fixed_rates", "--rates", f.fixed_rates);
  put("trajectories", "--trajectories", f.trajectories);
  put("seed", "--seed", f.seed);
  put("threads", "--threads", f.threads);
  put("out", "--out", f.out);
  put("mismatch_m", "--test-mismatch-m", f.mismatch_m);
  if (f.t_max || f.grid_points) raw.erase("times");
  put("t_max", "--t-max", f.t_max);
  put("grid_points", "--grid-points", f.grid_points);
  if (f.mc) raw["mc"] = {"true", "--mc"};
  return build_run_options(raw, defaults);
}

McConfig mc_config(const RunOptions& o) {
  McConfig mc;
  mc.scenario = o.scenario;
  mc.n_trajectories = o.trajectories;
  mc.threads = o.threads;
  return mc;
}

json rates_json(const FluctuatorRates& rates) {
  json j = json::object();
  if (!rates.a.empty()) j["a"] = rates.a;
  if (!rates.b.empty()) j["b"] = rates.b;
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json manifest_json(const std::string& command, const RunOptions& o, const FluctuatorRates& rates,
                   double seconds, const std::vector<std::string>& outputs) {
  json j;
  j["tool"] = "rtnq";
  j["version"] = std::string(kVersion);
  j["command"] = command;
  j["config"] = echo_config(o);
  j["seed"] = o.scenario.seed;
  j["fixed_rates"] = rates_json(rates);
  j["wall_clock_seconds"] = seconds;
  j["outputs"] = outputs;
  return j;
}

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int command_run(const RunOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const CorrelationSeries series = evolve_series(o.scenario, o.threads);
  std::optional<std::vector<McEstimate>> mc;
  if (o.mc) mc = estimate_coefficient(mc_config(o), series.rates);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text(dir / "series.csv", series_csv(series, mc ? &*mc : nullptr));
  const json manifest = manifest_json("run", o, series.rates, elapsed_since(start), {"series.csv", "manifest.json"});
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "wrote " << (dir / "series.csv").string() << " and " << (dir / "manifest.json").string() << "\n";
  return kExitOk;
}

int command_validate(const RunOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const ValidationReport report = validate_scenario(o);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text(dir / "validation.json", report.json.dump(2) + "\n");
  FluctuatorRates rates = resolve_fixed_rates(o.scenario);
  const json manifest =
      manifest_json("validate", o, rates, elapsed_since(start), {"validation.json", "manifest.json"});
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  for (const auto& check : report.json["checks"]) {
    out << (check["passed"].get<bool>() ? "PASS " : "FAIL ") << check["name"].get<std::string>() << "\n";
  }
  out << (report.passed ? "all checks passed" : "validation FAILED") << "\n";
  return report.passed ? kExitOk : kExitChecksFailed;
}

int command_psd(const RunOptions& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const PsdResult psd = compute_psd(o);
  const fs::path dir(o.out);
  fs::create_directories(dir);
  write_text(dir / "psd.csv", psd_csv(psd));
  json fit;
  fit["band"] = {psd.band_lo, psd.band_hi};
  fit["slope_analytic"] = psd.slope_analytic;
  fit["slope_collection"] = psd.slope_collection;
  fit["slope_periodogram"] = psd.slope_periodogram;
  fit["expected_slope"] = -o.scenario.dist.alpha();
  write_text(dir / "psd_fit.json", fit.dump(2) + "\n");
  FluctuatorRates rates;
  rates.a = psd.rates;
  const json manifest = manifest_json("psd", o, rates, elapsed_since(start),
                                      {"psd.csv", "psd_fit.json", "manifest.json"});
  write_text(dir / "manifest.json", manifest.dump(2) + "\n");
  out << "slope (fit band [" << psd.band_lo << ", " << psd.band_hi << "]): analytic " << psd.slope_analytic
      << ", collection " << psd.slope_collection << ", periodogram " << psd.slope_periodogram << "\n";
  return kExitOk;
}

}  // namespace

std::string series_csv(const CorrelationSeries& series, const std::vector<McEstimate>* mc) {
  std::string csv = mc ? "t,coeff,negativity,discord,mc_coeff,mc_stderr\n" : "t,coeff,negativity,discord\n";
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const CorrelationPoint& p = series.points[i];
    csv += format_double(p.time) + "," + format_double(series.coefficients[i]) + "," +
           format_double(p.negativity) + "," + format_double(p.discord);
    if (mc) csv += "," + format_double((*mc)[i].coeff_mean) + "," + format_double((*mc)[i].coeff_stderr);
    csv += "\n";
  }
  return csv;
}

ValidationReport validate_scenario(const RunOptions& o) {
  const ScenarioConfig& analytic_cfg = o.scenario;
  const CorrelationSeries series = evolve_series(analytic_cfg, o.threads);
  std::vector<double> analytic = series.coefficients;
  if (o.mismatch_m != 0) {
    for (std::size_t i = 0; i < analytic.size(); ++i) {
      analytic[i] = scenario_coefficient(analytic_cfg, series.rates, analytic_cfg.time_grid[i], o.mismatch_m);
    }
  }
  McConfig mc = mc_config(o);
  const McCorrelationSeries est = estimate_correlations(mc);

  json checks = json::array();

  // Q = h(N) along the analytic series.
  double identity_err = 0.0;
  for (std::size_t i = 0; i < series.points.size(); ++i) {
    const CorrelationPoint& p = series.points[i];
    identity_err = std::max(identity_err, std::abs(p.negativity - std::abs(series.coefficients[i])));
    identity_err = std::max(identity_err, std::abs(p.discord - h_function(p.negativity)));
  }
  const bool identity_ok = identity_err <= kIdentityTol;
  checks.push_back({{"name", "identity_q_equals_h_of_n"}, {"passed", identity_ok}, {"max_error", identity_err},
                    {"tolerance", kIdentityTol}});

  json neg_points = json::array();
  json disc_points = json::array();
  bool neg_ok = true, disc_ok = true, leak_ok = true;
  double max_z = 0.0, max_leak_sigmas = 0.0;
  for (std::size_t i = 0; i < est.points.size(); ++i) {
    const McCorrelationPoint& p = est.points[i];
    const double n_analytic = std::abs(analytic[i]);
    const double q_analytic = h_function(analytic[i]);
    const double sigma = p.negativity_stderr;
    const double diff = p.negativity - n_analytic;
    const double z = sigma > 0.0 ? diff / sigma : (std::abs(diff) <= 1e-12 ? 0.0 : std::copysign(1e300, diff));
    const bool n_pass = std::abs(z) <= kSigmaLimit;
    const bool q_pass = q_analytic >= p.discord_band_lo - 1e-12 && q_analytic <= p.discord_band_hi + 1e-12;
    neg_ok = neg_ok && n_pass;
    disc_ok = disc_ok && q_pass;
    max_z = std::max(max_z, std::abs(z));
    neg_points.push_back({{"t", p.time}, {"analytic", n_analytic}, {"mc", p.negativity}, {"stderr", sigma},
                          {"z", z}, {"passed", n_pass}});
    disc_points.push_back({{"t", p.time}, {"analytic", q_analytic}, {"mc", p.discord},
                           {"band", {p.discord_band_lo, p.discord_band_hi}}, {"passed", q_pass}});
    const McEstimate& e = est.estimates[i];
    const double leak_limit = kLeakageSigmas * e.off_family_stderr;
    const bool leak_pass = e.off_family_max <= leak_limit + 1e-12;
    leak_ok = leak_ok && leak_pass;
    if (e.off_family_stderr > 0.0) max_leak_sigmas = std::max(max_leak_sigmas, e.off_family_max / e.off_family_stderr);
  }
  checks.push_back({{"name", "mc_negativity_within_3_sigma"}, {"passed", neg_ok}, {"max_abs_z", max_z},
                    {"points", neg_points}});
  checks.push_back({{"name", "mc_discord_within_3_sigma_band"}, {"passed", disc_ok}, {"points", disc_points}});
  checks.push_back({{"name", "mc_bell_family_leakage_below_5_sigma"}, {"passed", leak_ok},
                    {"max_sigmas", max_leak_sigmas}});

  ValidationReport report;
  report.passed = identity_ok && neg_ok && disc_ok && leak_ok;
  report.json["passed"] = report.passed;
  report.json["scenario"] = std::string(to_string(o.scenario.scenario));
  report.json["topology"] = std::string(to_string(o.scenario.topology));
  report.json["alpha"] = o.scenario.dist.alpha();
  report.json["trajectories"] = o.trajectories;
  report.json["fixed_rates"] = rates_json(series.rates);
  report.json["checks"] = checks;
  return report;
}

PsdResult compute_psd(const RunOptions& o) {
  const ScenarioConfig& sc = o.scenario;
  PsdResult r;
  if (sc.fixed_rates) {
    r.rates = *sc.fixed_rates;
  } else {
    RngStream rng(sc.seed, kRateStream);
    r.rates = sample_rates(sc.dist, static_cast<std::size_t>(sc.n_fluctuators), rng);
  }
  double f_lo, f_hi;
  if (sc.dist.is_point_mass()) {
    const double corner = sc.dist.gamma_min() / (2.0 * M_PI);
    f_lo = corner / 100.0;
    f_hi = corner * 100.0;
    r.band_lo = f_lo;
    r.band_hi = f_hi;
  } else {
    std::tie(r.band_lo, r.band_hi) = power_law_band(sc.dist);
    f_lo = sc.dist.gamma_min() / (2.0 * M_PI);
    f_hi = sc.dist.gamma_max() / (2.0 * M_PI);
    if (!(r.band_hi > r.band_lo)) {
      r.band_lo = f_lo;
      r.band_hi = f_hi;
    }
  }
  r.frequencies = log_spaced(f_lo, f_hi, o.psd_points);
  const double inv_n = 1.0 / static_cast<double>(r.rates.size());
  for (double f : r.frequencies) {
    r.analytic.push_back(synthesized_spectrum(sc.dist, f));
    r.collection.push_back(inv_n * collection_spectrum(r.rates, f));
  }
  // The Lorentzian 4γ/(4π²f² + γ²) is the spectrum of a telegraph signal
  // flipping at rate γ/2.
  std::vector<double> flip_rates;
  for (double g : r.rates) flip_rates.push_back(0.5 * g);
  CollectionPeriodogramOptions popt;
  popt.segment_length = std::size_t{1} << o.psd_segment_log2;
  popt.segments = o.psd_segments;
  r.periodogram = collection_periodogram(flip_rates, r.frequencies, sc.seed, popt);
  for (double& p : r.periodogram) p *= inv_n;
  r.slope_analytic = fit_loglog_slope(r.frequencies, r.analytic, r.band_lo, r.band_hi);
  r.slope_collection = fit_loglog_slope(r.frequencies, r.collection, r.band_lo, r.band_hi);
  r.slope_periodogram = fit_loglog_slope(r.frequencies, r.periodogram, r.band_lo, r.band_hi);
  return r;
}

std::string psd_csv(const PsdResult& psd) {
  std::string csv = "f,S_analytic,S_collection,S_periodogram\n";
  for (std::size_t i = 0; i < psd.frequencies.size(); ++i) {
    csv += format_double(psd.frequencies[i]) + "," + format_double(psd.analytic[i]) + "," +
           format_double(psd.collection[i]) + "," + format_double(psd.periodogram[i]) + "\n";
  }
  return csv;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"rtnq: two-qubit correlations under 1/f^alpha telegraph noise"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  FlagValues run_flags, validate_flags, psd_flags;
  CLI::App* run = app.add_subcommand("run", "Analytic negativity/discord series (optionally with Monte Carlo)");
  add_flags(*run, run_flags, true);
  CLI::App* validate = app.add_subcommand("validate", "Analytic vs Monte Carlo cross-check report");
  add_flags(*validate, validate_flags, false);
  CLI::App* psd = app.add_subcommand("psd", "Synthesized, collection and periodogram spectra with slope fits");
  add_flags(*psd, psd_flags, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  }

  try {
    if (run->parsed()) return command_run(resolve(run_flags, {}), out);
    if (validate->parsed()) {
      CommandDefaults d;
      d.grid_points = 50;
      return command_validate(resolve(validate_flags, d), out);
    }
    if (psd->parsed()) return command_psd(resolve(psd_flags, {}), out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const QuadratureError& e) {
    const QuadratureResult& d = e.diagnostics();
    err << "numerical error: " << e.what() << "\n"
        << "  diagnostics: value=" << d.value << " error=" << d.error << " |f|=" << d.abs_integral
        << " panels=" << d.intervals << " evaluations=" << d.evaluations << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitSchema;
  }
  return kExitSchema;
}

}  // namespace rtnq
