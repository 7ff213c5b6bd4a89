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

#ifndef satsec_channel_H
#define satsec_channel_H

#include <armadillo>
#include <cstdint>
#include <variant>

namespace satsec {

// Per-link amplitude attenuation factors. Values are unitless amplitudes;
// <= 1 in clear-sky/rain scenarios but larger values are accepted.
struct attenuation_profile {
  arma::vec alpha;      // one factor per user, length K
  double alpha_e = 1.0; // eavesdropper factor

  void validate() const;
};

// Square-root antenna gains between the M on-board elements and each
// terminal.
struct antenna_gains {
  arma::cx_mat G;  // M x K, entry (m,k) toward user k
  arma::cx_vec ge; // length M, toward the eavesdropper

  void validate() const;
};

// Overall downlink channels and the common noise power. Column k of H is the
// channel vector of user k; noise power is the same at every terminal.
struct channel_realization {
  arma::cx_mat H;     // M x K
  arma::cx_vec h_e;   // length M
  double sigma2 = 0.0; // watts

  arma::uword n_elements() const { return H.n_rows; }
  arma::uword n_beams() const { return H.n_cols; }
  void validate() const;
};

// What the transmitter knows about the eavesdropper's channel.
struct perfect_csi {
  arma::cx_vec h_e;
};
struct covariance_csi {
  arma::cx_mat R_hat_e; // a-priori E{(h_e h_e^H)^T}, Hermitian PSD
};
struct estimated_csi {
  arma::cx_vec h_hat_e;  // imperfect estimate of h_e
  arma::cx_mat R_delta_e; // estimation-error covariance E{(D D^H)^T}
};
using eavesdropper_csi = std::variant<perfect_csi, covariance_csi, estimated_csi>;

// Throws std::invalid_argument unless R is Hermitian (tolerance 1e-12,
// relative to the largest entry) and PSD (eigenvalues >= -1e-10 * trace).
void validate_covariance(const arma::cx_mat& R, const char* name);

// Overall channel from gains and attenuation: column k of H is
// alpha_k * G(:,k), and h_e = alpha_e * ge.
channel_realization build_channel(const antenna_gains& gains,
                                  const attenuation_profile& atten,
                                  double sigma2);

// Draws a channel with |H(m,k)| = alpha_k and |h_e(m)| = alpha_e exactly and
// independent uniform phases keyed by (seed, m, k). Deterministic: identical
// seeds give bit-identical realizations regardless of call order.
channel_realization sample_channel(std::uint64_t seed, arma::uword n_elements,
                                   arma::uword n_beams,
                                   const attenuation_profile& atten,
                                   double sigma2);

// (h h^H)^T: Hermitian, PSD, rank <= 1, trace = ||h||^2. Satisfies
// w^H R w = |h^T w|^2 for every w.
arma::cx_mat outer_covariance(const arma::cx_vec& h);

} // namespace satsec

#endif
