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

#include "satsec/channel.hpp"

#include <complex>
#include <stdexcept>
#include <string>

#include "satsec/rng.hpp"

namespace satsec {

void attenuation_profile::validate() const {
  if (alpha.n_elem == 0)
    throw std::invalid_argument("attenuation profile needs at least one user factor");
  if (!alpha.is_finite() || arma::any(alpha < 0.0))
    throw std::invalid_argument("user attenuation factors must be finite and >= 0");
  if (!std::isfinite(alpha_e) || alpha_e < 0.0)
    throw std::invalid_argument("eavesdropper attenuation factor must be finite and >= 0");
}

void antenna_gains::validate() const {
  if (G.n_rows == 0 || G.n_cols == 0)
    throw std::invalid_argument("gain matrix must be nonempty");
  if (!G.is_finite() || !ge.is_finite())
    throw std::invalid_argument("antenna gains must be finite");
  if (ge.n_elem != G.n_rows)
    throw std::invalid_argument("eavesdropper gain vector length " +
                                std::to_string(ge.n_elem) +
                                " does not match element count " +
                                std::to_string(G.n_rows));
}

void channel_realization::validate() const {
  if (H.n_rows == 0 || H.n_cols == 0)
    throw std::invalid_argument("channel matrix must be nonempty");
  if (h_e.n_elem != H.n_rows)
    throw std::invalid_argument("eavesdropper channel length does not match element count");
  if (!H.is_finite() || !h_e.is_finite())
    throw std::invalid_argument("channel entries must be finite");
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
    throw std::invalid_argument("noise power sigma2 must be positive and finite (watts)");
}

void validate_covariance(const arma::cx_mat& R, const char* name) {
  if (R.n_rows != R.n_cols || R.n_rows == 0)
    throw std::invalid_argument(std::string(name) + " must be a nonempty square matrix");
  if (!R.is_finite())
    throw std::invalid_argument(std::string(name) + " must be finite");
  const double scale = std::max(1.0, arma::abs(R).max());
  if (arma::abs(R - R.t()).max() > 1e-12 * scale)
    throw std::invalid_argument(std::string(name) + " is not Hermitian");
  arma::vec eigs = arma::eig_sym(R);
  const double trace = arma::accu(arma::real(R.diag()));
  if (eigs.min() < -1e-10 * std::max(trace, 1.0))
    throw std::invalid_argument(std::string(name) + " is not positive semidefinite");
}

channel_realization build_channel(const antenna_gains& gains,
                                  const attenuation_profile& atten,
                                  double sigma2) {
  gains.validate();
  atten.validate();
  if (atten.alpha.n_elem != gains.G.n_cols)
    throw std::invalid_argument("attenuation profile has " +
                                std::to_string(atten.alpha.n_elem) +
                                " users but gain matrix has " +
                                std::to_string(gains.G.n_cols) + " columns");
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("noise power sigma2 must be positive (watts)");

  channel_realization chan;
  chan.H = gains.G;
  for (arma::uword k = 0; k < chan.H.n_cols; ++k)
    chan.H.col(k) *= atten.alpha(k);
  chan.h_e = atten.alpha_e * gains.ge;
  chan.sigma2 = sigma2;
  return chan;
}

channel_realization sample_channel(std::uint64_t seed, arma::uword n_elements,
                                   arma::uword n_beams,
                                   const attenuation_profile& atten,
                                   double sigma2) {
  if (n_elements < 1 || n_beams < 1)
    throw std::invalid_argument("need at least one antenna element and one beam");
  atten.validate();
  if (atten.alpha.n_elem != n_beams)
    throw std::invalid_argument("attenuation profile has " +
                                std::to_string(atten.alpha.n_elem) +
                                " users but " + std::to_string(n_beams) +
                                " beams were requested");
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("noise power sigma2 must be positive (watts)");

  channel_realization chan;
  chan.H.set_size(n_elements, n_beams);
  chan.h_e.set_size(n_elements);
  chan.sigma2 = sigma2;
  for (arma::uword m = 0; m < n_elements; ++m) {
    for (arma::uword k = 0; k < n_beams; ++k) {
      const double ph = rng::phase(seed, rng::kStreamUserGains, m, k);
      chan.H(m, k) = std::polar(atten.alpha(k), ph);
    }
    const double ph = rng::phase(seed, rng::kStreamEavesdropperGains, m, 0);
    chan.h_e(m) = std::polar(atten.alpha_e, ph);
  }
  return chan;
}

arma::cx_mat outer_covariance(const arma::cx_vec& h) {
  if (!h.is_finite())
    throw std::invalid_argument("channel vector must be finite");
  return arma::conj(h) * h.st();
}

} // namespace satsec
