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

#ifndef satsec_experiments_H
#define satsec_experiments_H

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <armadillo>

#include "satsec/powerctl.hpp"
#include "satsec/secrecy.hpp"

namespace satsec {

// How a scheme that does not optimize its beamformer obtains one.
// `zfbf` holds the co-channel-nulling weights fixed during power control
// (the beamformer is optimized once, then frozen); `matched_filter` steers
// each beam at its own user; `uniform` feeds all elements equally.
enum class fixed_weights_kind { zfbf, matched_filter, uniform };

const char* to_string(fixed_weights_kind k);

beamforming_matrix make_fixed_weights(const channel_realization& chan,
                                      fixed_weights_kind kind);

// ---- schemes -------------------------------------------------------------

// Power control on a frozen beamformer, full eavesdropper CSI.
struct scheme_fixed_bf {
  fixed_weights_kind weights = fixed_weights_kind::zfbf;
  std::optional<beamforming_matrix> W_fixed; // overrides `weights` when set
};

// Joint design: zero-forcing + eavesdropper nulling, closed-form powers.
struct scheme_joint_zf_nulling {};

// Zero-forcing beams, power control against the a-priori eavesdropper
// covariance. When R_hat_e is not given it defaults to the isotropic
// alpha_e^2 I implied by the attenuation-times-phase channel model.
struct scheme_zfbf_unknown_csi {
  std::optional<arma::cx_mat> R_hat_e;
};

// Nulling on an imperfect estimate h_hat_e, power control against the
// estimation-error covariance. Either pass the estimate explicitly or let
// the harness synthesize h_e = h_hat_e + delta with per-entry complex
// Gaussian errors of standard deviation error_stddev (R_delta_e then is
// error_stddev^2 I).
struct scheme_joint_imperfect_csi {
  double error_stddev = 0.1;
  std::optional<arma::cx_vec> h_hat_e;
  std::optional<arma::cx_mat> R_delta_e;
};

// Baseline: fixed per-beam powers on a frozen beamformer; only feasibility
// of the secrecy targets is evaluated.
struct scheme_fixed_power_fixed_bf {
  double p_total_watts = 10.0; // split equally unless p_fixed is set
  fixed_weights_kind weights = fixed_weights_kind::matched_filter;
  std::optional<arma::vec> p_fixed;
  std::optional<beamforming_matrix> W_fixed;
};

using scheme =
    std::variant<scheme_fixed_bf, scheme_joint_zf_nulling,
                 scheme_zfbf_unknown_csi, scheme_joint_imperfect_csi,
                 scheme_fixed_power_fixed_bf>;

std::string scheme_name(const scheme& s);

// ---- single instance -----------------------------------------------------

struct trial_result {
  arma::vec p;            // per-beam powers (watts)
  double total = 0.0;     // sum of p
  bool feasible = false;  // targets attainable and iteration converged
  bool converged = false;
  arma::uword iterations = 0;
  std::vector<trace_point> trace;
  std::string failure; // diagnostic when infeasible
};

// Runs one scheme on one channel realization with per-beam secrecy-SINR
// targets. Infeasibility and non-convergence mark the trial infeasible
// instead of throwing. `chan_seed` keys deterministic per-trial synthesis
// (the imperfect-CSI estimation error).
trial_result solve_instance(const channel_realization& chan, const scheme& s,
                            const arma::vec& gamma,
                            const solve_options& opts = {},
                            std::uint64_t chan_seed = 0);

// ---- Monte Carlo sweeps ----------------------------------------------------

struct sweep_iter_trace {};                      // single draw, full traces
struct sweep_antenna_elements { std::vector<arma::uword> values; };
struct sweep_beams { std::vector<arma::uword> values; };
struct sweep_eaves_atten { std::vector<double> degradation_db; }; // 0 dB = clear sky
struct sweep_secrecy_target { std::vector<double> gamma0_db; };
struct sweep_user_atten {
  arma::uword user = 0;
  std::vector<double> alpha_values;
};
struct sweep_csi_comparison {
  std::vector<double> p_tot_watts;
  double tol_db = 0.01;
};
struct sweep_air_interface {
  rate_table table;
  std::vector<double> efficiencies_bps_hz; // empty = the table's efficiencies
};
struct sweep_max_users { double p_tot_watts = 10.0; };

using sweep_spec =
    std::variant<sweep_iter_trace, sweep_antenna_elements, sweep_beams,
                 sweep_eaves_atten, sweep_secrecy_target, sweep_user_atten,
                 sweep_csi_comparison, sweep_air_interface, sweep_max_users>;

std::string sweep_param_name(const sweep_spec& sweep);

struct experiment_config {
  arma::uword n_elements = 8;
  arma::uword n_beams = 5;
  arma::uword n_trials = 1000;
  std::uint64_t base_seed = 1;
  double alpha = 0.8;     // common user attenuation
  arma::vec alpha_vec;    // optional per-user override (length K)
  double alpha_e = 0.8;
  double sigma2_dbm = -10.0;
  std::vector<double> gamma0_db = {6.0}; // uniform targets; sweeps may override
  sweep_spec sweep = sweep_iter_trace{};
  std::vector<scheme> schemes;
  solve_options solver;
  arma::uword threads = 0; // 0: decide from SATSEC_THREADS / hardware

  attenuation_profile attenuation() const;
  double sigma2_watts() const { return dbm_to_watts(sigma2_dbm); }
  void validate() const;
};

// Tabular sweep output. Cells are pre-formatted strings so heterogeneous
// sweep kinds share one writer; numeric cells use a fixed "%.12g" format,
// making repeated runs byte-identical.
struct result_table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::string metadata_json; // config echo, seed, library version

  std::string to_csv() const;
  std::string to_json() const;
};

std::string format_cell(double v);

// Runs every sweep point x scheme x trial; trial t draws its channel with
// seed = base_seed XOR t, so extending n_trials keeps existing trials and
// all sweep points share their channel draws. Means are over feasible
// trials; a point with none reports feasibility 0 and empty means.
result_table monte_carlo_sweep(const experiment_config& config);

// ---- power-budget SINR balancing (bisection) -------------------------------

struct balance_result {
  double gamma_star_db = 0.0;
  bool feasible = false; // false: no target in the bracket is attainable
};

// Largest uniform secrecy-SINR target (dB) the scheme can meet on this
// channel within the total power budget, by bisection over
// [-20 dB, +60 dB] to tol_db.
balance_result max_common_sinr(const channel_realization& chan, const scheme& s,
                               double p_tot_watts, double tol_db = 0.01,
                               const solve_options& opts = {},
                               std::uint64_t chan_seed = 0);

// ---- maximum user capacity --------------------------------------------------

struct capacity_point {
  arma::uword n_beams = 0;
  arma::uword n_feasible = 0;
  double feasibility_rate = 0.0;
  double mean_total_w = 0.0; // over feasible trials
  bool supported = false;    // feasibility >= 0.5 and mean within budget
};

struct capacity_result {
  std::string scheme;
  arma::uword max_users = 0;
  std::vector<capacity_point> curve;
};

// Largest K (scanned incrementally from 1; K < M for nulling schemes) whose
// Monte Carlo mean total power fits the budget with feasibility >= 0.5.
std::vector<capacity_result> max_users(const experiment_config& config,
                                       double p_tot_watts);

// ---- presets ----------------------------------------------------------------

// Named experiment parameterizations fig3..fig10 and table1. Shapes follow
// the corresponding study setups; the documented defaults fill everything
// the study leaves open.
bool is_preset_name(const std::string& name);
std::vector<std::string> preset_names();
experiment_config preset_config(const std::string& name);

struct preset_overrides {
  std::optional<std::uint64_t> seed;
  std::optional<arma::uword> trials;
  std::optional<arma::uword> threads;
  std::optional<double> tol;
};

// Executes a preset (table1 runs its five row configurations and
// concatenates the capacity curves).
result_table run_preset(const std::string& name,
                        const preset_overrides& overrides = {});

// The synthetic, non-normative threshold table used by tests and the fig10
// preset. Mirrors data/rate_table_fixture.csv.
rate_table fixture_rate_table();

} // namespace satsec

#endif
