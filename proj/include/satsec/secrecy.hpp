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

#ifndef satsec_secrecy_H
#define satsec_secrecy_H

#include <string>
#include <variant>
#include <vector>

#include <armadillo>

#include "satsec/beamform.hpp"
#include "satsec/channel.hpp"

namespace satsec {

// dB / dBm conversions. The library core works in linear units; these live
// at the boundaries (CLI, experiment configs).
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
inline double dbm_to_watts(double dbm) { return 1e-3 * std::pow(10.0, dbm / 10.0); }

// Mapping from a spectral-efficiency requirement (bits/s/Hz) to the SINR
// threshold that supports it.
struct gaussian_mapping {}; // Shannon: gamma = 2^rate - 1

struct rate_table_row {
  double efficiency_bps_hz = 0.0;
  double required_sinr_db = 0.0;
};

// Air-interface threshold table (e.g. a DVB-S2 MODCOD set). Rows strictly
// ascending in both columns. The library ships no normative table; tables
// are inputs.
struct rate_table {
  std::vector<rate_table_row> rows;
  void validate() const;
};

using rate_mapping = std::variant<gaussian_mapping, rate_table>;

// Loads a table from CSV with header `efficiency_bps_hz,required_sinr_db`.
rate_table load_rate_table_csv(const std::string& path);

// SINR of legitimate user k: desired beam power over noise plus co-channel
// interference, all through user k's channel.
double sinr_legitimate(arma::uword k, const channel_realization& chan,
                       const beamforming_matrix& W, const arma::vec& p);

// SINR of an eavesdropper wiretapping beam k; other beams act as
// interference at the eavesdropper.
double sinr_eavesdropper(arma::uword k, const channel_realization& chan,
                         const beamforming_matrix& W, const arma::vec& p);

// Secrecy SINR: (gamma_k - gamma_ek) / (1 + gamma_ek). May be negative;
// only secrecy_rate clamps.
double secrecy_sinr(double gamma_k, double gamma_ek);

// Achievable secrecy rate in bits/s/Hz: max(0, log2(1 + gamma_s)).
// Requires gamma_s > -1.
double secrecy_rate(double gamma_s);

// All three SINR vectors of an operating point.
struct sinr_report {
  arma::vec gamma;   // legitimate, per beam
  arma::vec gamma_e; // eavesdropper, per beam
  arma::vec gamma_s; // secrecy, per beam
};
sinr_report evaluate_sinr(const channel_realization& chan,
                          const beamforming_matrix& W, const arma::vec& p);

// SINR threshold for a target secrecy rate. Gaussian inputs: 2^rate - 1.
// Table: threshold of the least-efficiency row covering the rate; a rate
// above the table's top row throws std::domain_error.
double required_sinr(double rate_target_bps_hz, const rate_mapping& mapping);

} // namespace satsec

#endif
