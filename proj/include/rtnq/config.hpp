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

#include "rtnq/dynamics.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rtnq {

inline constexpr std::string_view kVersion = "1.0.0";

/// Schema violation. The message is anchored at its origin:
/// "path:line: field: ..." for config files, "--flag: ..." for flags.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string value;
  std::string origin;  ///< "file.cfg:12" or "--alpha"
};

/// Raw key-value pairs before validation. Later sources override earlier ones.
using RawConfig = std::map<std::string, ConfigEntry>;

/// Parses "key = value" lines; '#' starts a comment, blank lines are skipped.
/// Unknown keys and malformed lines throw ConfigError.
RawConfig parse_config_text(std::string_view text, const std::string& source);
RawConfig read_config_file(const std::filesystem::path& path);

/// Fully resolved settings of one CLI invocation.
struct RunOptions {
  ScenarioConfig scenario;
  bool mc = false;
  std::size_t trajectories = 100000;
  unsigned threads = 0;
  std::string out = "rtnq-out";
  std::size_t psd_points = 60;
  std::size_t psd_segment_log2 = 14;
  std::size_t psd_segments = 16;
  int mismatch_m = 0;  ///< validation negative-control hook; 0 disables
};

/// Grid defaults differ per command: run uses 2000 points, validate 50.
struct CommandDefaults {
  std::size_t grid_points = kDefaultGridPoints;
};

/// Applies defaults, then \p raw, and validates every field. Errors name the
/// field, its origin and the valid range.
RunOptions build_run_options(const RawConfig& raw, const CommandDefaults& defaults = {});

/// Keys of the schema, in echo order.
const std::vector<std::string>& config_keys();

/// Resolved settings as key-value text that build_run_options maps back to
/// identical options (numbers printed with 17 significant digits).
std::map<std::string, std::string> echo_config(const RunOptions& options);

/// "%.17g" formatting.
std::string format_double(double value);

}  // namespace rtnq
