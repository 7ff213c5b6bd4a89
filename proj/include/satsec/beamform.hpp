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

#ifndef satsec_beamform_H
#define satsec_beamform_H

#include <armadillo>

#include "satsec/channel.hpp"

namespace satsec {

// Beamforming weight matrix; column k maps beam k's signal onto the M
// antenna elements. Columns are unit norm.
struct beamforming_matrix {
  arma::cx_mat W; // M x K

  arma::uword n_elements() const { return W.n_rows; }
  arma::uword n_beams() const { return W.n_cols; }
  void validate() const; // unit column norms to 1e-12
};

// Orthogonal projector onto the null space of `constraints` (r x M, each row
// a transposed channel vector h^T that the weight must satisfy h^T w = 0).
// Returns a Hermitian idempotent M x M matrix P with constraints * P = 0 and
// rank(P) = M - rank(constraints). Rank is decided by a singular-value
// cutoff of 1e-12 times the largest singular value, so near-degenerate
// constraints shed their weakest directions instead of poisoning P.
// Requires r < M.
arma::cx_mat null_space_projector(const arma::cx_mat& constraints);

// Joint zero-forcing and eavesdropper nulling: w_k maximizes |h_k^T w_k|
// subject to h_j^T w_k = 0 for j != k and h_e^T w_k = 0. Requires M > K.
// Throws zero_gain_error when h_k lies in the constraint span.
beamforming_matrix zf_nulling_weights(const channel_realization& chan);

// Zero-forcing only: the eavesdropper constraint is dropped. Requires
// M >= K. With K = 1 this is the matched filter h_1^* / ||h_1||.
beamforming_matrix zfbf_weights(const channel_realization& chan);

// Same construction as zf_nulling_weights but nulling the estimated channel
// h_hat_e; the residual toward the true h_e is whatever the estimate leaves.
beamforming_matrix zf_nulling_weights_estimated(const channel_realization& chan,
                                                const arma::cx_vec& h_hat_e);

} // namespace satsec

#endif
