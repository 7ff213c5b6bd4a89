// SPDX-License-Identifier: Apache-2.0
//
// satsec - secure multibeam satellite downlink design via joint power
// control and beamforming with per-user secrecy constraints
// Copyright (C) 2026 the satsec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct run_result {
  int exit_code = -1;
  std::string output; // stdout + stderr
};

run_result run_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "satsec_cli_test";
  fs::create_directories(dir);
  const fs::path log = dir / "out.log";
  const std::string cmd =
      std::string(SATSEC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  run_result r;
  r.exit_code = WEXITSTATUS(status);
  std::ifstream in(log);
  std::stringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "satsec_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

} // namespace

TEST_CASE("solve echoes the dBm conversion in its metadata") {
  const fs::path out = temp_file("solve.json");
  const run_result r = run_cli(
      "solve --seed 3 --elements 8 --beams 3 --alpha 0.8 --alpha-e 0.8 "
      "--sigma2-dbm -10 --scheme joint --gamma0-db 6 --out " +
      out.string());
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("sigma2_watts").get<double>() == Catch::Approx(1e-4).epsilon(1e-12));
  CHECK(j.at("converged").get<bool>());
  CHECK(j.at("p_watts").size() == 3);
}

TEST_CASE("solve returns exit code 2 on an infeasible instance") {
  // M = K makes joint nulling dimension-infeasible.
  const run_result r = run_cli(
      "solve --seed 3 --elements 4 --beams 4 --scheme joint --gamma0-db 6");
  CHECK(r.exit_code == 2);
  CHECK(r.output.find("infeasible") != std::string::npos);
}

TEST_CASE("sweep runs from a config file and is byte-deterministic") {
  const fs::path cfg = temp_file("sweep_config.json");
  {
    std::ofstream out(cfg);
    out << R"({
  "n_elements": 8, "n_beams": 3, "n_trials": 5, "base_seed": 11,
  "alpha": 0.8, "alpha_e": 0.8, "sigma2_dbm": -10, "gamma0_db": [3.0],
  "schemes": [{"kind": "joint_zf_nulling"}],
  "sweep": {"kind": "antenna_elements", "values": [6, 8]}
})";
  }
  const fs::path out1 = temp_file("sweep1.csv");
  const fs::path out2 = temp_file("sweep2.csv");
  const run_result r1 =
      run_cli("sweep --config " + cfg.string() + " --out " + out1.string());
  const run_result r2 =
      run_cli("sweep --config " + cfg.string() + " --out " + out2.string());
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  const std::string a = slurp(out1), b = slurp(out2);
  CHECK(!a.empty());
  CHECK(a == b);
  CHECK(a.rfind("sweep_param,", 0) == 0);
}

TEST_CASE("config files with unknown keys are rejected by name") {
  const fs::path cfg = temp_file("bad_config.json");
  {
    std::ofstream out(cfg);
    out << R"({"n_beams": 3, "n_trails": 7})"; // typo'd key
  }
  const run_result r = run_cli("sweep --config " + cfg.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("n_trails") != std::string::npos);
}

TEST_CASE("preset command emits a CSV with a header") {
  const fs::path out = temp_file("fig3.csv");
  const run_result r =
      run_cli("preset fig3 --out " + out.string());
  REQUIRE(r.exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("gamma0_db,scheme,trial,feasible,iter,total_power_w", 0) == 0);
  CHECK(csv.find("\n") != std::string::npos);
}

TEST_CASE("balance prints a target in dB") {
  const run_result r = run_cli(
      "balance --seed 4 --elements 8 --beams 3 --alpha 0.8 --alpha-e 1.0 "
      "--scheme joint --p-tot 10");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("gamma*") != std::string::npos);
}

TEST_CASE("check reports conditions and probe counts") {
  const run_result r = run_cli(
      "check --seed 6 --elements 8 --beams 3 --alpha 0.8 --alpha-e 0.5 "
      "--scheme fixed_bf --gamma0-db 3 --probe-samples 200");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("condition 1") != std::string::npos);
  CHECK(r.output.find("positivity violations") != std::string::npos);
}

TEST_CASE("unknown scheme names fail with exit code 1") {
  const run_result r = run_cli(
      "solve --seed 1 --elements 6 --beams 2 --scheme warp_drive");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("warp_drive") != std::string::npos);
}
