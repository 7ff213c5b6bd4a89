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

#include "satsec/beamform.hpp"

#include <stdexcept>
#include <string>

#include "satsec/errors.hpp"

namespace satsec {

void beamforming_matrix::validate() const {
  if (W.n_rows == 0 || W.n_cols == 0)
    throw std::invalid_argument("beamforming matrix must be nonempty");
  if (!W.is_finite())
    throw std::invalid_argument("beamforming weights must be finite");
  for (arma::uword k = 0; k < W.n_cols; ++k) {
    const double n = arma::norm(W.col(k));
    if (std::abs(n - 1.0) > 1e-12)
      throw std::invalid_argument("beamforming column " + std::to_string(k + 1) +
                                  " is not unit norm (||w|| = " +
                                  std::to_string(n) + ")");
  }
}

arma::cx_mat null_space_projector(const arma::cx_mat& constraints) {
  const arma::uword m = constraints.n_cols;
  const arma::uword r = constraints.n_rows;
  if (m == 0)
    throw std::invalid_argument("constraint matrix has no columns");
  if (r >= m)
    throw std::invalid_argument("need fewer constraint rows (" +
                                std::to_string(r) + ") than dimensions (" +
                                std::to_string(m) + ")");
  if (r == 0)
    return arma::eye<arma::cx_mat>(m, m);

  arma::cx_mat U, V;
  arma::vec s;
  if (!arma::svd(U, s, V, constraints))
    throw std::runtime_error("SVD of constraint matrix failed");

  // Rows are h^T, so the forbidden directions are spanned by the leading
  // right singular vectors; directions with singular values inside the
  // cutoff count as null.
  const double cutoff = s.n_elem ? 1e-12 * s.max() : 0.0;
  arma::uword rank = 0;
  while (rank < s.n_elem && s(rank) > cutoff)
    ++rank;

  arma::cx_mat P = arma::eye<arma::cx_mat>(m, m);
  if (rank > 0) {
    const arma::cx_mat Vr = V.cols(0, rank - 1);
    P -= Vr * Vr.t();
  }
  return P;
}

namespace {

// Constraint rows for beam k: the transposed channels of all other users,
// optionally followed by an eavesdropper channel to null.
arma::cx_mat constraint_rows(const arma::cx_mat& H, arma::uword k,
                             const arma::cx_vec* eaves) {
  const arma::uword m = H.n_rows;
  const arma::uword n_users = H.n_cols;
  const arma::uword r = n_users - 1 + (eaves ? 1 : 0);
  arma::cx_mat C(r, m);
  arma::uword row = 0;
  for (arma::uword j = 0; j < n_users; ++j) {
    if (j == k)
      continue;
    C.row(row++) = H.col(j).st();
  }
  if (eaves)
    C.row(row++) = eaves->st();
  return C;
}

// Fixes the overall phase so the largest-modulus entry is real positive;
// makes outputs deterministic across factorization backends.
void canonicalize_phase(arma::cx_vec& w) {
  const arma::uword i = arma::abs(w).index_max();
  const std::complex<double> pivot = w(i);
  if (std::abs(pivot) > 0.0)
    w *= std::conj(pivot) / std::abs(pivot);
}

beamforming_matrix project_and_normalize(const channel_realization& chan,
                                         const arma::cx_vec* eaves) {
  const arma::uword m = chan.n_elements();
  const arma::uword n_beams = chan.n_beams();
  beamforming_matrix bf;
  bf.W.set_size(m, n_beams);
  for (arma::uword k = 0; k < n_beams; ++k) {
    const arma::cx_mat P = null_space_projector(constraint_rows(chan.H, k, eaves));
    const arma::cx_vec target = arma::conj(chan.H.col(k));
    arma::cx_vec w = P * target;
    const double n = arma::norm(w);
    if (n <= 1e-14 * arma::norm(target))
      throw zero_gain_error(k);
    w /= n;
    canonicalize_phase(w);
    bf.W.col(k) = w;
  }
  return bf;
}

} // namespace

beamforming_matrix zf_nulling_weights(const channel_realization& chan) {
  chan.validate();
  if (chan.n_elements() <= chan.n_beams())
    throw std::invalid_argument(
        "joint nulling needs more antenna elements than beams (M = " +
        std::to_string(chan.n_elements()) + ", K = " +
        std::to_string(chan.n_beams()) + ")");
  return project_and_normalize(chan, &chan.h_e);
}

beamforming_matrix zfbf_weights(const channel_realization& chan) {
  chan.validate();
  if (chan.n_elements() < chan.n_beams())
    throw std::invalid_argument(
        "zero-forcing needs at least as many antenna elements as beams (M = " +
        std::to_string(chan.n_elements()) + ", K = " +
        std::to_string(chan.n_beams()) + ")");
  return project_and_normalize(chan, nullptr);
}

beamforming_matrix zf_nulling_weights_estimated(const channel_realization& chan,
                                                const arma::cx_vec& h_hat_e) {
  chan.validate();
  if (h_hat_e.n_elem != chan.n_elements())
    throw std::invalid_argument("estimated eavesdropper channel length does not match element count");
  if (!h_hat_e.is_finite())
    throw std::invalid_argument("estimated eavesdropper channel must be finite");
  if (chan.n_elements() <= chan.n_beams())
    throw std::invalid_argument(
        "joint nulling needs more antenna elements than beams (M = " +
        std::to_string(chan.n_elements()) + ", K = " +
        std::to_string(chan.n_beams()) + ")");
  return project_and_normalize(chan, &h_hat_e);
}

} // namespace satsec
