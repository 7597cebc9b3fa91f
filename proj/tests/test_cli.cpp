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

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using namespace rtnq;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rtnq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rtnq-test-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("run writes a finite series and a manifest") {
  const fs::path dir = scratch("run");
  const Result r = cli({"run", "--scenario", "single", "--alpha", "1", "--topology", "separate", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv(slurp(dir / "series.csv"));
  REQUIRE(rows.size() == kDefaultGridPoints + 1);
  CHECK(rows[0] == std::vector<std::string>{"t", "coeff", "negativity", "discord"});
  CHECK(rows[1] == std::vector<std::string>{"0", "1", "1", "1"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (const auto& cell : rows[i]) CHECK(std::isfinite(std::stod(cell)));
  }
  const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(manifest["tool"] == "rtnq");
  CHECK(manifest["command"] == "run");
  CHECK(manifest["config"]["alpha"] == "1");
  CHECK(manifest["seed"].get<std::uint64_t>() == kDefaultSeed);
  CHECK(manifest.contains("wall_clock_seconds"));
  fs::remove_all(dir);
}

TEST_CASE("manifest replays to a byte-identical series") {
  const fs::path first = scratch("first"), second = scratch("second");
  REQUIRE(cli({"run", "--scenario", "collection", "--alpha", "2", "--nf", "5", "--topology", "common", "--grid-points", "40",
               "--mc", "--trajectories", "2000", "--out", first.string()})
              .code == kExitOk);
  const auto rows = csv(slurp(first / "series.csv"));
  CHECK(rows[0] == std::vector<std::string>{"t", "coeff", "negativity", "discord", "mc_coeff", "mc_stderr"});
  REQUIRE(cli({"run", "--manifest", (first / "manifest.json").string(), "--out", second.string()}).code == kExitOk);
  CHECK(slurp(first / "series.csv") == slurp(second / "series.csv"));
  const auto m1 = nlohmann::json::parse(slurp(first / "manifest.json"));
  const auto m2 = nlohmann::json::parse(slurp(second / "manifest.json"));
  CHECK(m1["fixed_rates"] == m2["fixed_rates"]);
  auto c1 = m1["config"], c2 = m2["config"];
  c1.erase("out");
  c2.erase("out");
  CHECK(c1 == c2);
  fs::remove_all(first);
  fs::remove_all(second);
}

TEST_CASE("schema errors exit with code 2") {
  Result r = cli({"run", "--alpha", "3"});
  CHECK(r.code == kExitSchema);
  CHECK(r.err.find("alpha") != std::string::npos);
  CHECK(r.err.find("[1, 2]") != std::string::npos);
  CHECK(cli({"run", "--grid-points", "0"}).code == kExitSchema);
  CHECK(cli({"run", "--bogus"}).code == kExitSchema);
  CHECK(cli({}).code == kExitSchema);

  const fs::path cfg = scratch("empty.cfg");
  std::ofstream(cfg) << "scenario = single\ntimes =\n";
  r = cli({"validate", cfg.string()});
  CHECK(r.code == kExitSchema);
  CHECK(r.err.find(cfg.string() + ":2") != std::string::npos);
  fs::remove(cfg);
}

TEST_CASE("validation report") {
  const fs::path dir = scratch("validate");
  Result r = cli({"validate", "--scenario", "collection", "--alpha", "2", "--topology", "separate", "--grid-points", "20",
                  "--trajectories", "20000", "--out", dir.string()});
  CHECK(r.code == kExitOk);
  auto report = nlohmann::json::parse(slurp(dir / "validation.json"));
  CHECK(report["passed"] == true);
  CHECK(report["checks"].size() == 4);

  // analytic side evaluated with the wrong phase multiplier
  r = cli({"validate", "--scenario", "collection", "--alpha", "2", "--topology", "separate", "--grid-points", "20",
           "--trajectories", "20000", "--test-mismatch-m", "4", "--out", dir.string()});
  CHECK(r.code == kExitChecksFailed);
  report = nlohmann::json::parse(slurp(dir / "validation.json"));
  CHECK(report["passed"] == false);
  bool flagged = false;
  for (const auto& c : report["checks"]) {
    if (c["name"] == "mc_negativity_within_3_sigma") flagged = c["passed"] == false && c["max_abs_z"].get<double>() > 3.0;
  }
  CHECK(flagged);
  fs::remove_all(dir);
}

TEST_CASE("psd with a single fixed rate gives matching Lorentzians") {
  const fs::path dir = scratch("psd");
  const Result r = cli({"psd", "--gamma-min", "2", "--gamma-max", "2", "--nf", "1", "--out", dir.string()});
  REQUIRE(r.code == kExitOk);
  const auto rows = csv(slurp(dir / "psd.csv"));
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == std::vector<std::string>{"f", "S_analytic", "S_collection", "S_periodogram"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double a = std::stod(rows[i][1]), c = std::stod(rows[i][2]);
    CHECK(std::abs(a - c) <= 1e-12 * std::abs(a));
  }
  const auto fit = nlohmann::json::parse(slurp(dir / "psd_fit.json"));
  CHECK(fit.contains("slope_analytic"));
  fs::remove_all(dir);
}

TEST_CASE("psd slopes for pink noise") {
  const fs::path dir = scratch("psd-pink");
  REQUIRE(cli({"psd", "--alpha", "1", "--out", dir.string()}).code == kExitOk);
  const auto fit = nlohmann::json::parse(slurp(dir / "psd_fit.json"));
  CHECK(std::abs(fit["slope_analytic"].get<double>() + 1.0) < 0.05);
  CHECK(std::abs(fit["slope_collection"].get<double>() + 1.0) < 0.15);
  CHECK(std::abs(fit["slope_periodogram"].get<double>() + 1.0) < 0.15);
  fs::remove_all(dir);
}

TEST_CASE("installed binary reports exit codes") {
  const std::string bin = RTNQ_CLI_PATH;
  CHECK(WEXITSTATUS(std::system((bin + " --version > /dev/null").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system((bin + " run --alpha 3 2> /dev/null").c_str())) == 2);
}
