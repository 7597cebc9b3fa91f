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

#include "rtnq/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rtnq {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const ConfigEntry& entry, const std::string& key, const std::string& what) {
  std::ostringstream msg;
  msg << entry.origin << ": " << key << " = '" << entry.value << "': " << what;
  throw ConfigError(msg.str());
}

double parse_double(const ConfigEntry& e, const std::string& key) {
  const std::string_view v = trim(e.value);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    fail(e, key, "expected a finite number");
  }
  return out;
}

long long parse_integer(const ConfigEntry& e, const std::string& key) {
  const std::string_view v = trim(e.value);
  long long out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(e, key, "expected an integer");
  return out;
}

std::uint64_t parse_unsigned(const ConfigEntry& e, const std::string& key) {
  const std::string_view v = trim(e.value);
  std::uint64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail(e, key, "expected a non-negative integer");
  return out;
}

bool parse_bool(const ConfigEntry& e, const std::string& key) {
  const std::string_view v = trim(e.value);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(e, key, "expected true or false");
}

std::vector<double> parse_list(const ConfigEntry& e, const std::string& key) {
  std::vector<double> out;
  std::string_view rest = trim(e.value);
  if (rest.empty()) return out;
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size() || !std::isfinite(v)) {
      fail(e, key, "expected a comma-separated list of numbers");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "scenario",    "topology", "alpha",        "gamma_min",  "gamma_max",  "nf",
      "fixed_rates", "fixed_rates_b", "t_max",   "grid_points", "times",     "seed",
      "mc",          "trajectories", "threads",  "out",        "psd_points", "psd_segment_log2",
      "psd_segments", "mismatch_m"};
  return keys;
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

RawConfig parse_config_text(std::string_view text, const std::string& source) {
  RawConfig raw;
  const auto& keys = config_keys();
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string origin = source + ":" + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ": expected 'key = value', got '" + std::string(line) + "'");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(origin + ": unknown key '" + key + "'");
    }
    raw[key] = {std::string(trim(line.substr(eq + 1))), origin};
  }
  return raw;
}

RawConfig read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path.string());
}

RunOptions build_run_options(const RawConfig& raw, const CommandDefaults& defaults) {
  RunOptions o;
  ScenarioConfig& sc = o.scenario;
  const auto get = [&raw](const std::string& key) -> const ConfigEntry* {
    const auto it = raw.find(key);
    return it == raw.end() ? nullptr : &it->second;
  };

  if (const auto* e = get("scenario")) {
    const auto s = parse_scenario(trim(e->value));
    if (!s) fail(*e, "scenario", "expected one of single, collection, collection-random");
    sc.scenario = *s;
  }
  if (const auto* e = get("topology")) {
    const auto t = parse_topology(trim(e->value));
    if (!t) fail(*e, "topology", "expected separate or common");
    sc.topology = *t;
  }
  double alpha = 1.0, gmin = kDefaultGammaMin, gmax = kDefaultGammaMax;
  if (const auto* e = get("alpha")) {
    alpha = parse_double(*e, "alpha");
    if (!(alpha >= 1.0 && alpha <= 2.0)) fail(*e, "alpha", "outside the valid range [1, 2]");
  }
  if (const auto* e = get("gamma_min")) {
    gmin = parse_double(*e, "gamma_min");
    if (!(gmin > 0.0)) fail(*e, "gamma_min", "must be > 0");
  }
  if (const auto* e = get("gamma_max")) {
    gmax = parse_double(*e, "gamma_max");
    if (!(gmax >= gmin)) fail(*e, "gamma_max", "must be >= gamma_min (" + format_double(gmin) + ")");
  }
  if (!(gmax >= gmin)) {
    throw ConfigError(get("gamma_min")->origin + ": gamma_min = " + format_double(gmin) +
                      ": must be <= gamma_max (" + format_double(gmax) + ")");
  }
  sc.dist = RateDistribution(alpha, gmin, gmax);

  if (const auto* e = get("nf")) {
    const long long nf = parse_integer(*e, "nf");
    if (nf < 1 || nf > 100000) fail(*e, "nf", "outside the valid range [1, 100000]");
    sc.n_fluctuators = static_cast<int>(nf);
  }
  if (const auto* e = get("fixed_rates")) {
    auto rates = parse_list(*e, "fixed_rates");
    if (rates.empty()) fail(*e, "fixed_rates", "must list at least one rate");
    for (double r : rates) {
      if (!(r >= gmin && r <= gmax)) {
        fail(*e, "fixed_rates", "rate " + format_double(r) + " outside [gamma_min, gamma_max]");
      }
    }
    if (sc.scenario != Scenario::FixedCollection) fail(*e, "fixed_rates", "only valid with scenario = collection");
    sc.n_fluctuators = static_cast<int>(rates.size());
    sc.fixed_rates = std::move(rates);
  }
  if (const auto* e = get("fixed_rates_b")) {
    auto rates = parse_list(*e, "fixed_rates_b");
    if (!sc.fixed_rates) fail(*e, "fixed_rates_b", "requires fixed_rates");
    if (rates.size() != sc.fixed_rates->size()) fail(*e, "fixed_rates_b", "must have as many rates as fixed_rates");
    for (double r : rates) {
      if (!(r >= gmin && r <= gmax)) {
        fail(*e, "fixed_rates_b", "rate " + format_double(r) + " outside [gamma_min, gamma_max]");
      }
    }
    sc.fixed_rates_b = std::move(rates);
  }

  double t_max = kDefaultHorizon;
  std::size_t points = defaults.grid_points;
  if (const auto* e = get("t_max")) {
    t_max = parse_double(*e, "t_max");
    if (!(t_max > 0.0)) fail(*e, "t_max", "must be > 0");
  }
  if (const auto* e = get("grid_points")) {
    const long long n = parse_integer(*e, "grid_points");
    if (n < 2 || n > 10'000'000) fail(*e, "grid_points", "outside the valid range [2, 10000000]");
    points = static_cast<std::size_t>(n);
  }
  if (const auto* e = get("times")) {
    auto times = parse_list(*e, "times");
    if (times.empty()) fail(*e, "times", "time grid is empty");
    if (times.front() < 0.0) fail(*e, "times", "times must be >= 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
      if (!(times[i] > times[i - 1])) fail(*e, "times", "times must be strictly increasing");
    }
    sc.time_grid = std::move(times);
  } else {
    sc.time_grid = uniform_time_grid(t_max, points);
  }
  if (const auto* e = get("seed")) sc.seed = parse_unsigned(*e, "seed");

  if (const auto* e = get("mc")) o.mc = parse_bool(*e, "mc");
  if (const auto* e = get("trajectories")) {
    const std::uint64_t n = parse_unsigned(*e, "trajectories");
    if (n < 1000) fail(*e, "trajectories", "must be >= 1000");
    o.trajectories = static_cast<std::size_t>(n);
  }
  if (const auto* e = get("threads")) {
    const std::uint64_t n = parse_unsigned(*e, "threads");
    if (n > 4096) fail(*e, "threads", "outside the valid range [0, 4096]");
    o.threads = static_cast<unsigned>(n);
  }
  if (const auto* e = get("out")) {
    if (trim(e->value).empty()) fail(*e, "out", "must not be empty");
    o.out = std::string(trim(e->value));
  }
  if (const auto* e = get("psd_points")) {
    const long long n = parse_integer(*e, "psd_points");
    if (n < 2 || n > 100000) fail(*e, "psd_points", "outside the valid range [2, 100000]");
    o.psd_points = static_cast<std::size_t>(n);
  }
  if (const auto* e = get("psd_segment_log2")) {
    const long long n = parse_integer(*e, "psd_segment_log2");
    if (n < 8 || n > 24) fail(*e, "psd_segment_log2", "outside the valid range [8, 24]");
    o.psd_segment_log2 = static_cast<std::size_t>(n);
  }
  if (const auto* e = get("psd_segments")) {
    const long long n = parse_integer(*e, "psd_segments");
    if (n < 1 || n > 4096) fail(*e, "psd_segments", "outside the valid range [1, 4096]");
    o.psd_segments = static_cast<std::size_t>(n);
  }
  if (const auto* e = get("mismatch_m")) {
    const long long m = parse_integer(*e, "mismatch_m");
    if (m != 0 && m != 2 && m != 4) fail(*e, "mismatch_m", "expected 0, 2 or 4");
    o.mismatch_m = static_cast<int>(m);
  }

  try {
    sc.validate();
  } catch (const std::invalid_argument& err) {
    throw ConfigError(std::string("config: ") + err.what());
  }
  return o;
}

std::map<std::string, std::string> echo_config(const RunOptions& o) {
  const ScenarioConfig& sc = o.scenario;
  std::map<std::string, std::string> m;
  m["scenario"] = std::string(to_string(sc.scenario));
  m["topology"] = std::string(to_string(sc.topology));
  m["alpha"] = format_double(sc.dist.alpha());
  m["gamma_min"] = format_double(sc.dist.gamma_min());
  m["gamma_max"] = format_double(sc.dist.gamma_max());
  m["nf"] = std::to_string(sc.n_fluctuators);
  if (sc.fixed_rates) m["fixed_rates"] = format_list(*sc.fixed_rates);
  if (sc.fixed_rates_b) m["fixed_rates_b"] = format_list(*sc.fixed_rates_b);
  m["times"] = format_list(sc.time_grid);
  m["seed"] = std::to_string(sc.seed);
  m["mc"] = o.mc ? "true" : "false";
  m["trajectories"] = std::to_string(o.trajectories);
  m["threads"] = std::to_string(o.threads);
  m["out"] = o.out;
  m["psd_points"] = std::to_string(o.psd_points);
  m["psd_segment_log2"] = std::to_string(o.psd_segment_log2);
  m["psd_segments"] = std::to_string(o.psd_segments);
  if (o.mismatch_m != 0) m["mismatch_m"] = std::to_string(o.mismatch_m);
  return m;
}

}  // namespace rtnq
