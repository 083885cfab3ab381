// Copyright 2026 The qtrack Authors
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrack/runner.hpp"

using namespace qtrack;

namespace {

std::filesystem::path temp_csv(const std::string& tag) {
  return std::filesystem::temp_directory_path() /
         ("qtrack_" + tag + "_" + std::to_string(::getpid()) + ".csv");
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct Csv {
  std::string header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream lines(text);
  std::string line;
  REQUIRE(std::getline(lines, line));
  csv.header = line;
  while (std::getline(lines, line)) {
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      row.push_back(std::strtod(field.c_str(), nullptr));
    }
    csv.rows.push_back(std::move(row));
  }
  return csv;
}

int run_cli(const std::string& args) {
  const std::string command =
      std::string(QTRACK_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("scenario names round-trip") {
  for (Scenario s :
       {Scenario::kSpinPrecession, Scenario::kSpinTracked,
        Scenario::kFreeParticle, Scenario::kStochastic,
        Scenario::kOverlapSweep}) {
    CHECK(parse_scenario(scenario_name(s)) == s);
  }
  CHECK_THROWS_AS(parse_scenario("spin"), std::invalid_argument);
}

TEST_CASE("config validation names the offending field") {
  RunConfig config;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // no output path
  config.output_path = "out.csv";
  CHECK_NOTHROW(config.validate());

  config.dt = 0.0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.dt = 0.01;

  config.scenario = Scenario::kStochastic;
  config.trajectories = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.trajectories = 10;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);  // seed missing
  config.seed_set = true;
  CHECK_NOTHROW(config.validate());

  config.scenario = Scenario::kFreeParticle;
  config.n_points = 100;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.n_points = 64;
  CHECK_NOTHROW(config.validate());

  config.scenario = Scenario::kOverlapSweep;
  config.overlap_state = "sideways";
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("the tracked-spin series reproduces cos and sin columns") {
  RunConfig config;
  config.scenario = Scenario::kSpinTracked;
  config.omega = 1.0;
  config.dt = 0.01;
  config.t_final = 2.0 * std::numbers::pi;
  const auto path = temp_csv("tracked");
  config.output_path = path.string();

  std::ostringstream diagnostics;
  REQUIRE(run(config, diagnostics) == 0);

  const Csv csv = parse_csv(slurp(path));
  CHECK(csv.header == "t,c_I,c_x,c_y,c_z");
  CHECK(csv.rows.size() == 629);  // floor(2 pi / 0.01) + 1
  for (const std::vector<double>& row : csv.rows) {
    REQUIRE(row.size() == 5);
    const double t = row[0];
    CHECK(std::abs(row[1]) <= 1e-9);
    CHECK(std::abs(row[2] - std::cos(t)) <= 1e-9);
    CHECK(std::abs(row[3] - std::sin(t)) <= 1e-9);
    CHECK(std::abs(row[4]) <= 1e-9);
  }
  std::filesystem::remove(path);
}

TEST_CASE("the precession series carries the rotating expectations") {
  RunConfig config;
  config.scenario = Scenario::kSpinPrecession;
  config.dt = 0.1;
  config.t_final = 3.0;
  const auto path = temp_csv("precession");
  config.output_path = path.string();

  std::ostringstream diagnostics;
  REQUIRE(run(config, diagnostics) == 0);
  const Csv csv = parse_csv(slurp(path));
  CHECK(csv.header == "t,sx_expect,sy_expect,sz_expect");
  CHECK(csv.rows.size() == 31);
  for (const std::vector<double>& row : csv.rows) {
    REQUIRE(row.size() == 4);
    const double t = row[0];
    CHECK(std::abs(row[1] - 0.5 * std::cos(t)) <= 1e-10);
    CHECK(std::abs(row[2] - 0.5 * std::sin(t)) <= 1e-10);
    CHECK(std::abs(row[3]) <= 1e-10);
  }
  std::filesystem::remove(path);
}

TEST_CASE("the overlap sweep decays by decades toward -i omega / 2") {
  RunConfig config;
  config.scenario = Scenario::kOverlapSweep;
  config.dt = 0.01;
  config.decades = 3;
  config.overlap_state = "plus-z";
  const auto path = temp_csv("sweep");
  config.output_path = path.string();

  std::ostringstream diagnostics;
  REQUIRE(run(config, diagnostics) == 0);
  const Csv csv = parse_csv(slurp(path));
  CHECK(csv.header == "dt,re_eps,im_eps,omega_expectation");
  REQUIRE(csv.rows.size() == 3);
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    const std::vector<double>& row = csv.rows[i];
    REQUIRE(row.size() == 4);
    CHECK(std::abs(row[0] - 0.01 * std::pow(10.0, -double(i))) <= 1e-15);
    CHECK(std::abs(row[1] - row[0] / 8.0) <= 1e-8);  // Re eps = omega^2 dt / 8
    CHECK(std::abs(row[2] + 0.5) <= row[0]);
    CHECK(std::abs(row[3] - 0.5) <= 1e-12);
  }
  std::filesystem::remove(path);
}

TEST_CASE("the free-particle run enforces the tracking window") {
  RunConfig config;
  config.scenario = Scenario::kFreeParticle;
  config.n_points = 64;
  config.dt = 0.5;
  config.t_final = 1.0;
  const auto path = temp_csv("particle");
  config.output_path = path.string();

  std::ostringstream diagnostics;
  REQUIRE(run(config, diagnostics) == 0);
  const Csv csv = parse_csv(slurp(path));
  CHECK(csv.header == "t,x_expect,drift,momentum_case_residual");
  REQUIRE(csv.rows.size() == 3);
  for (const std::vector<double>& row : csv.rows) {
    REQUIRE(row.size() == 4);
    CHECK(std::abs(row[1] - (-2.0 + row[0])) <= 2e-3);
    CHECK(row[2] <= 2e-3);
    CHECK(row[3] <= 1e-10);
  }
  std::filesystem::remove(path);

  // Past the window (1.25 for the default packet) the config is rejected.
  config.t_final = 2.0;
  std::ostringstream rejection;
  CHECK(run(config, rejection) == 2);
  CHECK(rejection.str().find("tracking window") != std::string::npos);
}

TEST_CASE("identical stochastic configs produce byte-identical output") {
  RunConfig config;
  config.scenario = Scenario::kStochastic;
  config.dt = 0.1;
  config.t_final = 1.0;
  config.trajectories = 20;
  config.halvings = 2;
  config.seed_set = true;
  config.seed = 5;

  const auto path_a = temp_csv("stoch_a");
  const auto path_b = temp_csv("stoch_b");
  std::ostringstream diagnostics;

  config.output_path = path_a.string();
  REQUIRE(run(config, diagnostics) == 0);
  config.output_path = path_b.string();
  REQUIRE(run(config, diagnostics) == 0);

  const std::string a = slurp(path_a);
  const std::string b = slurp(path_b);
  CHECK(a == b);

  const Csv csv = parse_csv(a);
  CHECK(csv.header == "dt,mean_final_infidelity,stderr,trajectories");
  REQUIRE(csv.rows.size() == 2);
  CHECK(std::abs(csv.rows[0][0] - 0.1) <= 1e-15);
  CHECK(std::abs(csv.rows[1][0] - 0.05) <= 1e-15);
  CHECK(csv.rows[0][3] == 20.0);

  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("run maps failure classes onto exit codes") {
  RunConfig config;
  config.scenario = Scenario::kSpinPrecession;
  config.dt = -1.0;
  config.output_path = "unused.csv";
  std::ostringstream config_error;
  CHECK(run(config, config_error) == 2);
  CHECK(config_error.str().find("dt") != std::string::npos);

  config.dt = 0.1;
  config.output_path = "/nonexistent-dir/qtrack.csv";
  std::ostringstream io_error;
  CHECK(run(config, io_error) == 3);
  CHECK(io_error.str().find("cannot open") != std::string::npos);
}

TEST_CASE("the command-line front end wires arguments to exit codes") {
  const auto path = temp_csv("cli");

  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("spin-precession --help") == 0);
  CHECK(run_cli("") == 2);               // subcommand required
  CHECK(run_cli("warp-drive") == 2);     // unknown subcommand
  CHECK(run_cli("spin-precession") == 2);  // --out required
  CHECK(run_cli("stochastic --out " + path.string()) == 2);  // --seed required
  CHECK(run_cli("spin-precession --dt nope --out " + path.string()) == 2);

  CHECK(run_cli("spin-precession --dt 0.5 --t-final 1 --out " +
                path.string()) == 0);
  const Csv csv = parse_csv(slurp(path));
  CHECK(csv.header == "t,sx_expect,sy_expect,sz_expect");
  CHECK(csv.rows.size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("config files feed flags and flags win on conflict") {
  const auto path = temp_csv("cfg_out");
  const auto cfg = std::filesystem::temp_directory_path() /
                   ("qtrack_cfg_" + std::to_string(::getpid()) + ".ini");
  {
    std::ofstream out(cfg);
    out << "[spin-precession]\n";
    out << "dt=0.5\n";
    out << "t-final=2\n";
  }

  // File alone: dt = 0.5 over [0, 2] gives 5 rows. The --config option
  // lives on the top-level command and works from either position.
  CHECK(run_cli("spin-precession --config " + cfg.string() + " --out " +
                path.string()) == 0);
  CHECK(parse_csv(slurp(path)).rows.size() == 5);
  CHECK(run_cli("--config " + cfg.string() + " spin-precession --out " +
                path.string()) == 0);
  CHECK(parse_csv(slurp(path)).rows.size() == 5);

  // Explicit flag overrides the file's dt.
  CHECK(run_cli("spin-precession --config " + cfg.string() +
                " --dt 1 --out " + path.string()) == 0);
  CHECK(parse_csv(slurp(path)).rows.size() == 3);

  std::filesystem::remove(path);
  std::filesystem::remove(cfg);
}
