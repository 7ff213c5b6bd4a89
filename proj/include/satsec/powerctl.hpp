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

#ifndef satsec_powerctl_H
#define satsec_powerctl_H

#include <array>
#include <cstdint>
#include <vector>

#include <armadillo>

#include "satsec/beamform.hpp"
#include "satsec/channel.hpp"
#include "satsec/errors.hpp"

namespace satsec {

// Which eavesdropper-knowledge regime the power iteration runs under. The
// regime decides how the eavesdropper gains are formed and whether the
// legitimate links still see co-channel interference.
enum class csi_variant { fixed_bf, unknown_csi, imperfect_csi };

const char* to_string(csi_variant v);

// Effective quadratic-form gains feeding the power update and the standard-
// function condition checks.
struct interference_coefficients {
  csi_variant variant = csi_variant::fixed_bf;

  arma::vec theta_kk; // length K, own-beam gain at user k
  arma::mat theta_kj; // K x K, gain of beam j at user k (diagonal unused)
  arma::vec theta_ek; // length K, own-beam gain at the eavesdropper
  arma::vec theta_ej; // length K, beam j's gain at the eavesdropper

  arma::vec b; // b_k = theta_kk
  arma::vec c; // c_k = (1 + gamma_k) * theta_ek

  // Interference rows; row k has an exact structural zero at column k.
  // unknown_csi / imperfect_csi zero h_tilde_k entirely: zero-forcing has
  // removed the legitimate co-channel terms from the update.
  arma::mat h_tilde_k; // K x K
  arma::mat h_tilde_e; // K x K

  arma::vec gamma; // secrecy SINR targets, linear, > 0
  double sigma2 = 0.0;

  arma::uword n_beams() const { return theta_kk.n_elem; }
};

// Populates the coefficients for one (channel, weights, targets, CSI)
// instance. The CSI kind must match the variant: fixed_bf <-> perfect,
// unknown_csi <-> covariance, imperfect_csi <-> estimated.
interference_coefficients coefficients(const channel_realization& chan,
                                       const beamforming_matrix& W,
                                       const arma::vec& gamma,
                                       const eavesdropper_csi& csi,
                                       csi_variant variant);

// One synchronous update of the interference-function iteration. Throws
// infeasible_error when a beam's denominator is nonpositive at p.
arma::vec power_update(const interference_coefficients& coeffs,
                       const arma::vec& p);

// Design-value secrecy SINR of each beam at power vector p, computed from
// the stored coefficients.
arma::vec secrecy_sinr_at(const interference_coefficients& coeffs,
                          const arma::vec& p);

struct solve_options {
  double tol = 1e-8;            // max relative per-beam power change
  arma::uword max_iter = 10000;
  arma::uword trace_stride = 1; // 0 disables the trace
};

struct trace_point {
  arma::uword iter = 0;
  arma::vec p;
  double total = 0.0;
};

struct power_solution {
  arma::vec p;
  bool converged = false;
  arma::uword iterations = 0;
  double residual = 0.0; // max_k |Gamma_s^k - gamma_k| / gamma_k at p
  std::vector<trace_point> trace;
};

// Iterates power_update from p0 until both the relative power change and the
// secrecy-SINR residual drop below tol, or max_iter is reached (converged
// stays false and the trace is returned for diagnosis). Infeasible updates
// propagate. From p0 = 0 the trajectory is monotone nondecreasing whenever
// the interference function is standard.
power_solution fixed_point_solve(const interference_coefficients& coeffs,
                                 const arma::vec& p0,
                                 const solve_options& opts = {});

// Same, starting from the zero vector.
power_solution fixed_point_solve(const interference_coefficients& coeffs,
                                 const solve_options& opts = {});

struct inequality_check {
  bool pass = false;
  double margin = 0.0; // min(LHS - RHS) over the compared entries
};

// Sufficient-condition checks for the iteration to be a standard
// interference function. For fixed_bf all three conditions apply; for
// unknown_csi / imperfect_csi only condition 1 does. Condition 2 bundles
// four elementwise inequalities (both vector directions and both outer-
// product directions); each is reported separately. Entries that are
// structurally zero on both sides are excluded from the strict comparisons.
struct condition_report {
  inequality_check cond1;                 // b_k > c_k
  std::array<inequality_check, 4> cond2;  // b h~k > c h~e ; b h~e > c h~k ;
                                          // outer-product versions of both
  inequality_check cond3;                 // sqrt-weighted cross inequality
  bool cond2_applicable = false;
  bool cond3_applicable = false;
  bool overall = false;
};

condition_report check_standard_conditions(const interference_coefficients& coeffs);

// Empirical probe of positivity / monotonicity / scalability on random
// (p, p', rho) triples with p >= p' >= 0 and rho in (1, 10]. Also evaluates
// the proof-internal quantities f(p), psi(p), and Delta at the sampled
// points. Infeasible samples are counted, not fatal.
struct probe_report {
  arma::uword n_samples = 0;
  arma::uword evaluated = 0; // samples where all three updates were feasible
  arma::uword infeasible_samples = 0;
  arma::uword positivity_violations = 0;
  arma::uword monotonicity_violations = 0;
  arma::uword scalability_violations = 0;
  double worst_positivity_margin = 0.0;  // min_k I_k(p); want > 0
  double worst_monotonicity_margin = 0.0; // min_k I_k(p) - I_k(p'); want >= 0
  double worst_scalability_margin = 0.0;  // min_k rho I_k(p) - I_k(rho p); want > 0
  double min_f = 0.0;   // min over samples/beams of f(p); positive iff update defined
  double max_psi = 0.0; // max elementwise psi_j(p); negative means monotone
  double max_delta = 0.0; // max Delta(p, rho); negative means scalable

  arma::uword violations() const {
    return positivity_violations + monotonicity_violations +
           scalability_violations;
  }
};

probe_report standard_property_probe(const interference_coefficients& coeffs,
                                     std::uint64_t seed,
                                     arma::uword n_samples);

// Closed-form minimum powers when W nulls both the co-channel and the
// eavesdropper constraints: P_k = gamma_k sigma^2 / |h_k^T w_k|^2. The
// caller is responsible for the nulling residuals; beams whose gain is
// below 1e-20 throw zero_gain_error.
arma::vec closed_form_power(const channel_realization& chan,
                            const beamforming_matrix& W,
                            const arma::vec& gamma);

} // namespace satsec

#endif
