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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "satsec/experiments.hpp"
#include "satsec/json_io.hpp"
#include "satsec/version.hpp"

namespace {

using nlohmann::json;
using namespace satsec;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitInfeasible = 2;

// ---- config-file parsing ----------------------------------------------------

void reject_unknown_keys(const json& j, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key))
      throw std::invalid_argument(where + ": unknown key `" + key + "`");
  }
}

double require_number(const json& j, const std::string& where,
                      const char* units) {
  if (!j.is_number())
    throw std::invalid_argument(where + ": expected a number (" + units + ")");
  return j.get<double>();
}

std::vector<double> number_list(const json& j, const std::string& where,
                                const char* units) {
  std::vector<double> out;
  if (j.is_number()) {
    out.push_back(j.get<double>());
    return out;
  }
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(where + ": expected a number or nonempty array (" +
                                std::string(units) + ")");
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(require_number(j[i], where + "[" + std::to_string(i) + "]", units));
  return out;
}

fixed_weights_kind parse_weights_kind(const std::string& s,
                                      const std::string& where) {
  if (s == "zfbf")
    return fixed_weights_kind::zfbf;
  if (s == "matched_filter")
    return fixed_weights_kind::matched_filter;
  if (s == "uniform")
    return fixed_weights_kind::uniform;
  throw std::invalid_argument(where +
                              ": weights must be zfbf | matched_filter | uniform");
}

beamforming_matrix load_weights_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open weights file: " + path);
  return beamforming_from_json(json::parse(in));
}

scheme parse_scheme_json(const json& j, const std::string& where) {
  if (j.is_string())
    return parse_scheme_json(json{{"kind", j.get<std::string>()}}, where);
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument(where + ": scheme needs a `kind`");
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "joint_zf_nulling") {
    reject_unknown_keys(j, {"kind"}, where);
    return scheme_joint_zf_nulling{};
  }
  if (kind == "fixed_bf") {
    reject_unknown_keys(j, {"kind", "weights", "weights_file"}, where);
    scheme_fixed_bf s;
    if (j.contains("weights"))
      s.weights = parse_weights_kind(j.at("weights").get<std::string>(), where);
    if (j.contains("weights_file"))
      s.W_fixed = load_weights_file(j.at("weights_file").get<std::string>());
    return s;
  }
  if (kind == "zfbf_unknown_csi") {
    reject_unknown_keys(j, {"kind"}, where);
    return scheme_zfbf_unknown_csi{};
  }
  if (kind == "joint_imperfect_csi") {
    reject_unknown_keys(j, {"kind", "error_stddev"}, where);
    scheme_joint_imperfect_csi s;
    if (j.contains("error_stddev"))
      s.error_stddev = require_number(j.at("error_stddev"),
                                      where + ".error_stddev", "amplitude");
    return s;
  }
  if (kind == "fixed_power_fixed_bf") {
    reject_unknown_keys(j, {"kind", "p_total_watts", "weights", "weights_file"},
                        where);
    scheme_fixed_power_fixed_bf s;
    if (j.contains("p_total_watts"))
      s.p_total_watts = require_number(j.at("p_total_watts"),
                                       where + ".p_total_watts", "watts");
    if (j.contains("weights"))
      s.weights = parse_weights_kind(j.at("weights").get<std::string>(), where);
    if (j.contains("weights_file"))
      s.W_fixed = load_weights_file(j.at("weights_file").get<std::string>());
    return s;
  }
  throw std::invalid_argument(where + ": unknown scheme kind `" + kind + "`");
}

sweep_spec parse_sweep_json(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument(where + ": sweep needs a `kind`");
  const std::string kind = j.at("kind").get<std::string>();

  auto uvalues = [&](const char* key) {
    std::vector<arma::uword> out;
    for (double v : number_list(j.at(key), where + "." + key, "count"))
      out.push_back(static_cast<arma::uword>(v));
    return out;
  };

  if (kind == "iter_trace") {
    reject_unknown_keys(j, {"kind"}, where);
    return sweep_iter_trace{};
  }
  if (kind == "antenna_elements") {
    reject_unknown_keys(j, {"kind", "values"}, where);
    return sweep_antenna_elements{uvalues("values")};
  }
  if (kind == "beams") {
    reject_unknown_keys(j, {"kind", "values"}, where);
    return sweep_beams{uvalues("values")};
  }
  if (kind == "eaves_atten") {
    reject_unknown_keys(j, {"kind", "degradation_db"}, where);
    return sweep_eaves_atten{
        number_list(j.at("degradation_db"), where + ".degradation_db", "dB")};
  }
  if (kind == "secrecy_target") {
    reject_unknown_keys(j, {"kind", "gamma0_db"}, where);
    return sweep_secrecy_target{
        number_list(j.at("gamma0_db"), where + ".gamma0_db", "dB")};
  }
  if (kind == "user_atten") {
    reject_unknown_keys(j, {"kind", "user", "alpha_values"}, where);
    sweep_user_atten sw;
    const double user = require_number(j.at("user"), where + ".user",
                                       "1-based user index");
    if (user < 1)
      throw std::invalid_argument(where + ".user: index is 1-based");
    sw.user = static_cast<arma::uword>(user) - 1;
    sw.alpha_values =
        number_list(j.at("alpha_values"), where + ".alpha_values", "amplitude");
    return sw;
  }
  if (kind == "csi_comparison") {
    reject_unknown_keys(j, {"kind", "p_tot_watts", "tol_db"}, where);
    sweep_csi_comparison sw;
    sw.p_tot_watts =
        number_list(j.at("p_tot_watts"), where + ".p_tot_watts", "watts");
    if (j.contains("tol_db"))
      sw.tol_db = require_number(j.at("tol_db"), where + ".tol_db", "dB");
    return sw;
  }
  if (kind == "air_interface") {
    reject_unknown_keys(j, {"kind", "table_path", "efficiencies"}, where);
    sweep_air_interface sw;
    if (j.contains("table_path"))
      sw.table = load_rate_table_csv(j.at("table_path").get<std::string>());
    else
      sw.table = fixture_rate_table();
    if (j.contains("efficiencies"))
      sw.efficiencies_bps_hz = number_list(j.at("efficiencies"),
                                           where + ".efficiencies", "bits/s/Hz");
    return sw;
  }
  if (kind == "max_users") {
    reject_unknown_keys(j, {"kind", "p_tot_watts"}, where);
    return sweep_max_users{
        require_number(j.at("p_tot_watts"), where + ".p_tot_watts", "watts")};
  }
  throw std::invalid_argument(where + ": unknown sweep kind `" + kind + "`");
}

experiment_config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  reject_unknown_keys(j,
                      {"n_elements", "n_beams", "n_trials", "base_seed",
                       "alpha", "alpha_vec", "alpha_e", "sigma2_dbm",
                       "gamma0_db", "tolerance", "max_iter", "threads",
                       "schemes", "sweep"},
                      path);

  experiment_config cfg;
  cfg.schemes.clear();
  if (j.contains("n_elements"))
    cfg.n_elements = static_cast<arma::uword>(
        require_number(j.at("n_elements"), path + ".n_elements", "count"));
  if (j.contains("n_beams"))
    cfg.n_beams = static_cast<arma::uword>(
        require_number(j.at("n_beams"), path + ".n_beams", "count"));
  if (j.contains("n_trials"))
    cfg.n_trials = static_cast<arma::uword>(
        require_number(j.at("n_trials"), path + ".n_trials", "count"));
  if (j.contains("base_seed"))
    cfg.base_seed = j.at("base_seed").get<std::uint64_t>();
  if (j.contains("alpha"))
    cfg.alpha = require_number(j.at("alpha"), path + ".alpha", "amplitude");
  if (j.contains("alpha_vec")) {
    const auto vals = number_list(j.at("alpha_vec"), path + ".alpha_vec",
                                  "amplitude");
    cfg.alpha_vec = arma::vec(vals);
  }
  if (j.contains("alpha_e"))
    cfg.alpha_e = require_number(j.at("alpha_e"), path + ".alpha_e", "amplitude");
  if (j.contains("sigma2_dbm"))
    cfg.sigma2_dbm =
        require_number(j.at("sigma2_dbm"), path + ".sigma2_dbm", "dBm");
  if (j.contains("gamma0_db"))
    cfg.gamma0_db = number_list(j.at("gamma0_db"), path + ".gamma0_db", "dB");
  if (j.contains("tolerance"))
    cfg.solver.tol = require_number(j.at("tolerance"), path + ".tolerance",
                                    "relative");
  if (j.contains("max_iter"))
    cfg.solver.max_iter = static_cast<arma::uword>(
        require_number(j.at("max_iter"), path + ".max_iter", "count"));
  if (j.contains("threads"))
    cfg.threads = static_cast<arma::uword>(
        require_number(j.at("threads"), path + ".threads", "count"));
  if (j.contains("schemes")) {
    const json& arr = j.at("schemes");
    if (!arr.is_array() || arr.empty())
      throw std::invalid_argument(path + ".schemes: expected a nonempty array");
    for (std::size_t i = 0; i < arr.size(); ++i)
      cfg.schemes.push_back(parse_scheme_json(
          arr[i], path + ".schemes[" + std::to_string(i) + "]"));
  }
  if (j.contains("sweep"))
    cfg.sweep = parse_sweep_json(j.at("sweep"), path + ".sweep");
  if (cfg.schemes.empty())
    cfg.schemes = {scheme_joint_zf_nulling{}, scheme_fixed_bf{}};
  return cfg;
}

// ---- shared instance options --------------------------------------------------

struct instance_options {
  std::string channel_file;
  std::uint64_t seed = 1;
  arma::uword n_elements = 8;
  arma::uword n_beams = 5;
  double alpha = 0.8;
  double alpha_e = 0.8;
  double sigma2_dbm = -10.0;
  std::string scheme_spec = "fixed_bf";
  std::string weights_file;
  double gamma0_db = 6.0;
};

void add_instance_flags(CLI::App* cmd, instance_options& opt) {
  cmd->add_option("--channel", opt.channel_file,
                  "channel JSON file (H, h_e, sigma2_watts)");
  cmd->add_option("--seed", opt.seed, "channel seed");
  cmd->add_option("-m,--elements", opt.n_elements, "antenna elements M");
  cmd->add_option("-k,--beams", opt.n_beams, "beams K");
  cmd->add_option("--alpha", opt.alpha, "user attenuation amplitude");
  cmd->add_option("--alpha-e", opt.alpha_e, "eavesdropper attenuation amplitude");
  cmd->add_option("--sigma2-dbm", opt.sigma2_dbm, "noise power (dBm)");
  cmd->add_option("--scheme", opt.scheme_spec,
                  "fixed_bf[:zfbf|matched_filter|uniform] | joint | "
                  "unknown_csi | imperfect_csi[:stddev] | fixed_power[:watts]");
  cmd->add_option("--weights-file", opt.weights_file,
                  "fixed beamforming weights JSON (overrides --scheme kind)");
  cmd->add_option("--gamma0-db", opt.gamma0_db, "secrecy SINR target (dB)");
}

channel_realization make_instance(const instance_options& opt) {
  if (!opt.channel_file.empty()) {
    std::ifstream in(opt.channel_file);
    if (!in)
      throw std::invalid_argument("cannot open channel file: " + opt.channel_file);
    return channel_from_json(json::parse(in));
  }
  attenuation_profile atten;
  atten.alpha = arma::vec(opt.n_beams, arma::fill::value(opt.alpha));
  atten.alpha_e = opt.alpha_e;
  return sample_channel(opt.seed, opt.n_elements, opt.n_beams, atten,
                        dbm_to_watts(opt.sigma2_dbm));
}

scheme make_scheme(const instance_options& opt) {
  std::string name = opt.scheme_spec;
  std::string arg;
  if (const auto pos = name.find(':'); pos != std::string::npos) {
    arg = name.substr(pos + 1);
    name = name.substr(0, pos);
  }
  std::optional<beamforming_matrix> W;
  if (!opt.weights_file.empty())
    W = load_weights_file(opt.weights_file);

  if (name == "fixed_bf") {
    scheme_fixed_bf s;
    if (!arg.empty())
      s.weights = parse_weights_kind(arg, "--scheme");
    s.W_fixed = W;
    return s;
  }
  if (name == "joint" || name == "joint_zf_nulling")
    return scheme_joint_zf_nulling{};
  if (name == "unknown_csi" || name == "zfbf_unknown_csi")
    return scheme_zfbf_unknown_csi{};
  if (name == "imperfect_csi" || name == "joint_imperfect_csi") {
    scheme_joint_imperfect_csi s;
    if (!arg.empty())
      s.error_stddev = std::stod(arg);
    return s;
  }
  if (name == "fixed_power" || name == "fixed_power_fixed_bf") {
    scheme_fixed_power_fixed_bf s;
    if (!arg.empty())
      s.p_total_watts = std::stod(arg);
    s.W_fixed = W;
    return s;
  }
  throw std::invalid_argument("unknown scheme `" + opt.scheme_spec + "`");
}

json instance_metadata(const instance_options& opt) {
  json meta;
  meta["library_version"] = kLibraryVersion;
  meta["schema_version"] = kOutputSchemaVersion;
  meta["scheme"] = opt.scheme_spec;
  meta["gamma0_db"] = opt.gamma0_db;
  if (opt.channel_file.empty()) {
    meta["seed"] = opt.seed;
    meta["n_elements"] = opt.n_elements;
    meta["n_beams"] = opt.n_beams;
    meta["alpha"] = opt.alpha;
    meta["alpha_e"] = opt.alpha_e;
    meta["sigma2_dbm"] = opt.sigma2_dbm;
    meta["sigma2_watts"] = dbm_to_watts(opt.sigma2_dbm);
  } else {
    meta["channel_file"] = opt.channel_file;
  }
  return meta;
}

void write_table(const result_table& table, const std::string& csv_path,
                 const std::string& json_path) {
  if (!csv_path.empty())
    write_file_atomic(csv_path, table.to_csv());
  if (!json_path.empty())
    write_file_atomic(json_path, table.to_json());
  if (csv_path.empty() && json_path.empty())
    std::cout << table.to_csv();
}

// ---- subcommand bodies ----------------------------------------------------------

int cmd_solve(const instance_options& opt, const std::string& out_json,
              const std::string& trace_csv, double tol, arma::uword max_iter) {
  const channel_realization chan = make_instance(opt);
  const scheme s = make_scheme(opt);
  const arma::vec gamma(chan.n_beams(),
                        arma::fill::value(db_to_linear(opt.gamma0_db)));
  solve_options opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  const trial_result r = solve_instance(chan, s, gamma, opts, opt.seed);

  if (!r.feasible) {
    std::cerr << "infeasible: " << (r.failure.empty() ? "targets not attainable" : r.failure)
              << "\n";
    return kExitInfeasible;
  }

  std::printf("scheme: %s\n", scheme_name(s).c_str());
  std::printf("converged in %llu iterations, total power %.6g W\n",
              static_cast<unsigned long long>(r.iterations), r.total);
  for (arma::uword k = 0; k < r.p.n_elem; ++k)
    std::printf("  p_%llu = %.6g W\n", static_cast<unsigned long long>(k + 1),
                r.p(k));

  json out = instance_metadata(opt);
  out["p_watts"] = std::vector<double>(r.p.begin(), r.p.end());
  out["total_power_w"] = r.total;
  out["iterations"] = r.iterations;
  out["converged"] = r.converged;

  // Achieved SINRs under the scheme's own beamformer are reported for the
  // perfect-CSI schemes, where the true channel is what the design used.
  if (!std::holds_alternative<scheme_zfbf_unknown_csi>(s) &&
      !std::holds_alternative<scheme_joint_imperfect_csi>(s)) {
    beamforming_matrix W;
    if (const auto* fb = std::get_if<scheme_fixed_bf>(&s))
      W = fb->W_fixed ? *fb->W_fixed : make_fixed_weights(chan, fb->weights);
    else if (const auto* fp = std::get_if<scheme_fixed_power_fixed_bf>(&s))
      W = fp->W_fixed ? *fp->W_fixed : make_fixed_weights(chan, fp->weights);
    else
      W = zf_nulling_weights(chan);
    const sinr_report rep = evaluate_sinr(chan, W, r.p);
    std::printf("secrecy SINRs (dB):");
    for (arma::uword k = 0; k < rep.gamma_s.n_elem; ++k)
      std::printf(" %.4f", linear_to_db(rep.gamma_s(k)));
    std::printf("\n");
    out["gamma_db"] = std::vector<double>();
    out["gamma_e_db"] = std::vector<double>();
    out["gamma_s_db"] = std::vector<double>();
    for (arma::uword k = 0; k < rep.gamma_s.n_elem; ++k) {
      out["gamma_db"].push_back(linear_to_db(rep.gamma(k)));
      out["gamma_e_db"].push_back(linear_to_db(rep.gamma_e(k)));
      out["gamma_s_db"].push_back(linear_to_db(rep.gamma_s(k)));
    }
  }

  if (!trace_csv.empty()) {
    power_solution sol;
    sol.p = r.p;
    sol.trace = r.trace;
    write_file_atomic(trace_csv, trace_to_csv(sol));
  }
  if (!out_json.empty())
    write_file_atomic(out_json, out.dump(2) + "\n");
  return kExitOk;
}

int cmd_check(const instance_options& opt, arma::uword probe_samples,
              std::uint64_t probe_seed, const std::string& out_json) {
  const channel_realization chan = make_instance(opt);
  const scheme s = make_scheme(opt);
  const arma::vec gamma(chan.n_beams(),
                        arma::fill::value(db_to_linear(opt.gamma0_db)));

  beamforming_matrix W;
  eavesdropper_csi csi = perfect_csi{chan.h_e};
  csi_variant variant = csi_variant::fixed_bf;
  if (const auto* fb = std::get_if<scheme_fixed_bf>(&s)) {
    W = fb->W_fixed ? *fb->W_fixed : make_fixed_weights(chan, fb->weights);
  } else if (std::holds_alternative<scheme_zfbf_unknown_csi>(s)) {
    W = zfbf_weights(chan);
    const double ae2 = arma::accu(arma::square(arma::abs(chan.h_e))) /
                       static_cast<double>(chan.n_elements());
    csi = covariance_csi{ae2 * arma::eye<arma::cx_mat>(chan.n_elements(),
                                                       chan.n_elements())};
    variant = csi_variant::unknown_csi;
  } else {
    throw std::invalid_argument(
        "check supports --scheme fixed_bf[:kind] and unknown_csi");
  }

  const auto co = coefficients(chan, W, gamma, csi, variant);
  const condition_report rep = check_standard_conditions(co);
  const probe_report probe = standard_property_probe(co, probe_seed, probe_samples);

  auto show = [](const char* name, const inequality_check& c) {
    std::printf("  %-28s %s  (margin %.6g)\n", name, c.pass ? "pass" : "FAIL",
                c.margin);
  };
  std::printf("standard-function conditions (%s):\n", to_string(co.variant));
  show("condition 1: b > c", rep.cond1);
  if (rep.cond2_applicable) {
    show("condition 2: b h~k > c h~e", rep.cond2[0]);
    show("condition 2: b h~e > c h~k", rep.cond2[1]);
    show("condition 2: outer kk > ee", rep.cond2[2]);
    show("condition 2: outer ee > kk", rep.cond2[3]);
    show("condition 3", rep.cond3);
  }
  std::printf("  overall: %s\n", rep.overall ? "pass" : "FAIL");
  std::printf("property probe (%llu samples, %llu infeasible):\n",
              static_cast<unsigned long long>(probe.n_samples),
              static_cast<unsigned long long>(probe.infeasible_samples));
  std::printf("  positivity violations:   %llu (worst margin %.6g)\n",
              static_cast<unsigned long long>(probe.positivity_violations),
              probe.worst_positivity_margin);
  std::printf("  monotonicity violations: %llu (worst margin %.6g)\n",
              static_cast<unsigned long long>(probe.monotonicity_violations),
              probe.worst_monotonicity_margin);
  std::printf("  scalability violations:  %llu (worst margin %.6g)\n",
              static_cast<unsigned long long>(probe.scalability_violations),
              probe.worst_scalability_margin);
  std::printf("  min f = %.6g, max psi = %.6g, max Delta = %.6g\n", probe.min_f,
              probe.max_psi, probe.max_delta);

  if (!out_json.empty()) {
    json out = instance_metadata(opt);
    out["conditions"] = {
        {"cond1", {{"pass", rep.cond1.pass}, {"margin", rep.cond1.margin}}},
        {"cond2_applicable", rep.cond2_applicable},
        {"cond3_applicable", rep.cond3_applicable},
        {"overall", rep.overall}};
    for (int i = 0; i < 4; ++i)
      out["conditions"]["cond2_" + std::to_string(i + 1)] = {
          {"pass", rep.cond2[i].pass}, {"margin", rep.cond2[i].margin}};
    out["conditions"]["cond3"] = {{"pass", rep.cond3.pass},
                                  {"margin", rep.cond3.margin}};
    out["probe"] = {{"n_samples", probe.n_samples},
                    {"infeasible_samples", probe.infeasible_samples},
                    {"positivity_violations", probe.positivity_violations},
                    {"monotonicity_violations", probe.monotonicity_violations},
                    {"scalability_violations", probe.scalability_violations},
                    {"min_f", probe.min_f},
                    {"max_psi", probe.max_psi},
                    {"max_delta", probe.max_delta}};
    write_file_atomic(out_json, out.dump(2) + "\n");
  }
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"secure multibeam satellite downlink design: power control and "
               "beamforming with per-user secrecy constraints"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("satsec ") + kLibraryVersion);

  // solve
  instance_options solve_opt;
  std::string solve_out, solve_trace;
  double solve_tol = 1e-8;
  arma::uword solve_max_iter = 10000;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "solve one instance and print powers/SINRs");
  add_instance_flags(solve_cmd, solve_opt);
  solve_cmd->add_option("--out", solve_out, "write result JSON here");
  solve_cmd->add_option("--trace-csv", solve_trace, "write iteration trace CSV here");
  solve_cmd->add_option("--tol", solve_tol, "convergence tolerance (relative)");
  solve_cmd->add_option("--max-iter", solve_max_iter, "iteration cap");

  // sweep
  std::string sweep_config, sweep_out, sweep_json;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<arma::uword> sweep_trials, sweep_threads;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a Monte Carlo sweep from a config file");
  sweep_cmd->add_option("--config", sweep_config, "experiment config JSON")
      ->required();
  sweep_cmd->add_option("--out", sweep_out, "CSV output path");
  sweep_cmd->add_option("--json", sweep_json, "JSON output path");
  sweep_cmd->add_option("--seed", sweep_seed, "override base seed");
  sweep_cmd->add_option("--trials", sweep_trials, "override trial count");
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads (0 = auto)");

  // balance
  instance_options bal_opt;
  double bal_ptot = 100.0, bal_tol_db = 0.01;
  std::string bal_out;
  CLI::App* bal_cmd = app.add_subcommand(
      "balance", "largest common secrecy-SINR target within a power budget");
  add_instance_flags(bal_cmd, bal_opt);
  bal_cmd->add_option("--p-tot", bal_ptot, "total power budget (watts)");
  bal_cmd->add_option("--tol-db", bal_tol_db, "bisection tolerance (dB)");
  bal_cmd->add_option("--out", bal_out, "write result JSON here");

  // capacity
  std::string cap_schemes = "fixed_power,fixed_bf,joint";
  double cap_ptot = 10.0, cap_alpha = 1.0, cap_alpha_e = 1.0,
         cap_gamma0 = 6.0, cap_sigma2_dbm = -10.0;
  arma::uword cap_elements = 20, cap_trials = 1000;
  std::uint64_t cap_seed = 1;
  std::optional<arma::uword> cap_threads;
  std::string cap_out, cap_json;
  CLI::App* cap_cmd =
      app.add_subcommand("capacity", "maximum supported users per scheme");
  cap_cmd->add_option("--p-tot", cap_ptot, "total power budget (watts)");
  cap_cmd->add_option("-m,--elements", cap_elements, "antenna elements M");
  cap_cmd->add_option("--alpha", cap_alpha, "user attenuation amplitude");
  cap_cmd->add_option("--alpha-e", cap_alpha_e, "eavesdropper attenuation amplitude");
  cap_cmd->add_option("--gamma0-db", cap_gamma0, "secrecy SINR target (dB)");
  cap_cmd->add_option("--sigma2-dbm", cap_sigma2_dbm, "noise power (dBm)");
  cap_cmd->add_option("--trials", cap_trials, "Monte Carlo trials per K");
  cap_cmd->add_option("--seed", cap_seed, "base seed");
  cap_cmd->add_option("--threads", cap_threads, "worker threads (0 = auto)");
  cap_cmd->add_option("--schemes", cap_schemes,
                      "comma list: fixed_power,fixed_bf,joint,unknown_csi,"
                      "imperfect_csi");
  cap_cmd->add_option("--out", cap_out, "CSV output path");
  cap_cmd->add_option("--json", cap_json, "JSON output path");

  // check
  instance_options chk_opt;
  arma::uword chk_samples = 1000;
  std::uint64_t chk_seed = 1;
  std::string chk_out;
  CLI::App* chk_cmd = app.add_subcommand(
      "check", "standard-function condition report and property probe");
  add_instance_flags(chk_cmd, chk_opt);
  chk_cmd->add_option("--probe-samples", chk_samples, "probe sample count");
  chk_cmd->add_option("--probe-seed", chk_seed, "probe stream seed");
  chk_cmd->add_option("--out", chk_out, "write report JSON here");

  // preset
  std::string preset_name, preset_out, preset_json;
  std::optional<std::uint64_t> preset_seed;
  std::optional<arma::uword> preset_trials, preset_threads;
  CLI::App* preset_cmd =
      app.add_subcommand("preset", "run a named experiment (fig3..fig10, table1)");
  preset_cmd->add_option("name", preset_name, "preset name")->required();
  preset_cmd->add_option("--out", preset_out, "CSV output path");
  preset_cmd->add_option("--json", preset_json, "JSON output path");
  preset_cmd->add_option("--seed", preset_seed, "override base seed");
  preset_cmd->add_option("--trials", preset_trials, "override trial count");
  preset_cmd->add_option("--threads", preset_threads, "worker threads (0 = auto)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed())
      return cmd_solve(solve_opt, solve_out, solve_trace, solve_tol,
                       solve_max_iter);

    if (sweep_cmd->parsed()) {
      experiment_config cfg = parse_config_file(sweep_config);
      if (sweep_seed)
        cfg.base_seed = *sweep_seed;
      if (sweep_trials)
        cfg.n_trials = *sweep_trials;
      if (sweep_threads)
        cfg.threads = *sweep_threads;
      write_table(monte_carlo_sweep(cfg), sweep_out, sweep_json);
      return kExitOk;
    }

    if (bal_cmd->parsed()) {
      const channel_realization chan = make_instance(bal_opt);
      const scheme s = make_scheme(bal_opt);
      const balance_result r =
          max_common_sinr(chan, s, bal_ptot, bal_tol_db, {}, bal_opt.seed);
      if (r.feasible)
        std::printf("gamma* = %.4f dB within %.6g W (%s)\n", r.gamma_star_db,
                    bal_ptot, scheme_name(s).c_str());
      else
        std::printf("infeasible at every target in the bracket (%s)\n",
                    scheme_name(s).c_str());
      if (!bal_out.empty()) {
        json out = instance_metadata(bal_opt);
        out["p_tot_watts"] = bal_ptot;
        out["feasible"] = r.feasible;
        if (r.feasible)
          out["gamma_star_db"] = r.gamma_star_db;
        write_file_atomic(bal_out, out.dump(2) + "\n");
      }
      return kExitOk;
    }

    if (cap_cmd->parsed()) {
      experiment_config cfg;
      cfg.n_elements = cap_elements;
      cfg.n_beams = 1;
      cfg.n_trials = cap_trials;
      cfg.base_seed = cap_seed;
      cfg.alpha = cap_alpha;
      cfg.alpha_e = cap_alpha_e;
      cfg.sigma2_dbm = cap_sigma2_dbm;
      cfg.gamma0_db = {cap_gamma0};
      if (cap_threads)
        cfg.threads = *cap_threads;
      cfg.schemes.clear();
      std::stringstream names(cap_schemes);
      std::string token;
      while (std::getline(names, token, ',')) {
        instance_options tmp;
        tmp.scheme_spec = token;
        tmp.scheme_spec.erase(0, tmp.scheme_spec.find_first_not_of(' '));
        if (tmp.scheme_spec == "fixed_power")
          tmp.scheme_spec = "fixed_power:" + std::to_string(cap_ptot);
        cfg.schemes.push_back(make_scheme(tmp));
      }
      cfg.sweep = sweep_max_users{cap_ptot};
      const result_table table = monte_carlo_sweep(cfg);
      std::string last_scheme;
      for (const auto& row : table.rows) {
        if (row.size() >= 8 && row[0] != last_scheme) {
          last_scheme = row[0];
          std::printf("%-24s max users: %s\n", row[0].c_str(), row[7].c_str());
        }
      }
      write_table(table, cap_out, cap_json);
      return kExitOk;
    }

    if (chk_cmd->parsed())
      return cmd_check(chk_opt, chk_samples, chk_seed, chk_out);

    if (preset_cmd->parsed()) {
      preset_overrides ov;
      ov.seed = preset_seed;
      ov.trials = preset_trials;
      ov.threads = preset_threads;
      write_table(run_preset(preset_name, ov), preset_out, preset_json);
      return kExitOk;
    }
  } catch (const infeasible_error& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitOk;
}
