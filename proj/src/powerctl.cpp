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

#include "satsec/powerctl.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "satsec/rng.hpp"

namespace satsec {

namespace {

constexpr double kRelChangeGuard = 1e-30; // guard in the relative-change denominator

double quadratic_gain(const arma::cx_vec& h, const arma::cx_vec& w) {
  return std::norm(arma::dot(h, w)); // |h^T w|^2
}

double hermitian_form(const arma::cx_mat& R, const arma::cx_vec& w) {
  const std::complex<double> q = arma::cdot(w, R * w); // w^H R w
  return std::max(0.0, q.real());
}

void check_powers(const arma::vec& p, arma::uword n) {
  if (p.n_elem != n)
    throw std::invalid_argument("power vector length does not match beam count");
  if (!p.is_finite() || arma::any(p < 0.0))
    throw std::invalid_argument("powers must be finite and >= 0 (watts)");
}

} // namespace

const char* to_string(csi_variant v) {
  switch (v) {
  case csi_variant::fixed_bf: return "fixed_bf";
  case csi_variant::unknown_csi: return "unknown_csi";
  case csi_variant::imperfect_csi: return "imperfect_csi";
  }
  return "?";
}

interference_coefficients coefficients(const channel_realization& chan,
                                       const beamforming_matrix& W,
                                       const arma::vec& gamma,
                                       const eavesdropper_csi& csi,
                                       csi_variant variant) {
  chan.validate();
  W.validate();
  if (W.n_elements() != chan.n_elements() || W.n_beams() != chan.n_beams())
    throw std::invalid_argument("beamforming matrix does not match channel dimensions");
  const arma::uword n = chan.n_beams();
  if (gamma.n_elem != n)
    throw std::invalid_argument("target vector length does not match beam count");
  if (!gamma.is_finite() || arma::any(gamma <= 0.0))
    throw std::invalid_argument("secrecy SINR targets must be finite and > 0");

  interference_coefficients co;
  co.variant = variant;
  co.gamma = gamma;
  co.sigma2 = chan.sigma2;
  co.theta_kk.set_size(n);
  co.theta_kj.zeros(n, n);
  co.theta_ek.set_size(n);
  co.theta_ej.set_size(n);

  for (arma::uword k = 0; k < n; ++k) {
    const arma::cx_vec hk = chan.H.col(k);
    co.theta_kk(k) = quadratic_gain(hk, W.W.col(k));
    for (arma::uword j = 0; j < n; ++j)
      if (j != k)
        co.theta_kj(k, j) = quadratic_gain(hk, W.W.col(j));
  }

  switch (variant) {
  case csi_variant::fixed_bf: {
    const auto* perfect = std::get_if<perfect_csi>(&csi);
    if (!perfect)
      throw std::invalid_argument("fixed_bf variant needs perfect eavesdropper CSI");
    if (perfect->h_e.n_elem != chan.n_elements())
      throw std::invalid_argument("eavesdropper channel length does not match element count");
    for (arma::uword j = 0; j < n; ++j)
      co.theta_ej(j) = quadratic_gain(perfect->h_e, W.W.col(j));
    co.theta_ek = co.theta_ej;
    break;
  }
  case csi_variant::unknown_csi: {
    const auto* cov = std::get_if<covariance_csi>(&csi);
    if (!cov)
      throw std::invalid_argument("unknown_csi variant needs the a-priori eavesdropper covariance");
    validate_covariance(cov->R_hat_e, "R_hat_e");
    if (cov->R_hat_e.n_rows != chan.n_elements())
      throw std::invalid_argument("R_hat_e dimension does not match element count");
    for (arma::uword j = 0; j < n; ++j)
      co.theta_ej(j) = hermitian_form(cov->R_hat_e, W.W.col(j));
    co.theta_ek = co.theta_ej;
    break;
  }
  case csi_variant::imperfect_csi: {
    const auto* est = std::get_if<estimated_csi>(&csi);
    if (!est)
      throw std::invalid_argument("imperfect_csi variant needs the estimated eavesdropper CSI");
    validate_covariance(est->R_delta_e, "R_delta_e");
    if (est->R_delta_e.n_rows != chan.n_elements() ||
        est->h_hat_e.n_elem != chan.n_elements())
      throw std::invalid_argument("estimated CSI dimensions do not match element count");
    for (arma::uword j = 0; j < n; ++j)
      co.theta_ej(j) = hermitian_form(est->R_delta_e, W.W.col(j));
    co.theta_ek = co.theta_ej;
    break;
  }
  }

  co.b = co.theta_kk;
  co.c = (1.0 + gamma) % co.theta_ek;

  co.h_tilde_k.zeros(n, n);
  co.h_tilde_e.zeros(n, n);
  for (arma::uword k = 0; k < n; ++k) {
    for (arma::uword j = 0; j < n; ++j) {
      if (j == k)
        continue;
      if (variant == csi_variant::fixed_bf)
        co.h_tilde_k(k, j) = co.theta_kj(k, j);
      co.h_tilde_e(k, j) = co.theta_ej(j);
    }
  }
  return co;
}

arma::vec power_update(const interference_coefficients& coeffs,
                       const arma::vec& p) {
  const arma::uword n = coeffs.n_beams();
  check_powers(p, n);
  arma::vec next(n);
  for (arma::uword k = 0; k < n; ++k) {
    const double mu_k =
        coeffs.theta_kk(k) /
        (coeffs.sigma2 + arma::dot(p, coeffs.h_tilde_k.row(k).t()));
    const double mu_ek =
        coeffs.theta_ek(k) /
        (coeffs.sigma2 + arma::dot(p, coeffs.h_tilde_e.row(k).t()));
    const double denom = mu_k - (1.0 + coeffs.gamma(k)) * mu_ek;
    if (!(denom > 0.0))
      throw infeasible_error(k, denom);
    next(k) = coeffs.gamma(k) / denom;
  }
  return next;
}

arma::vec secrecy_sinr_at(const interference_coefficients& coeffs,
                          const arma::vec& p) {
  const arma::uword n = coeffs.n_beams();
  check_powers(p, n);
  arma::vec gs(n);
  for (arma::uword k = 0; k < n; ++k) {
    const double gk =
        p(k) * coeffs.theta_kk(k) /
        (coeffs.sigma2 + arma::dot(p, coeffs.h_tilde_k.row(k).t()));
    const double ge =
        p(k) * coeffs.theta_ek(k) /
        (coeffs.sigma2 + arma::dot(p, coeffs.h_tilde_e.row(k).t()));
    gs(k) = (gk - ge) / (1.0 + ge);
  }
  return gs;
}

power_solution fixed_point_solve(const interference_coefficients& coeffs,
                                 const arma::vec& p0,
                                 const solve_options& opts) {
  const arma::uword n = coeffs.n_beams();
  check_powers(p0, n);
  if (!(opts.tol > 0.0))
    throw std::invalid_argument("tolerance must be positive");

  power_solution sol;
  arma::vec p = p0;
  if (opts.trace_stride > 0)
    sol.trace.push_back({0, p, arma::accu(p)});

  for (arma::uword it = 1; it <= opts.max_iter; ++it) {
    const arma::vec next = power_update(coeffs, p);
    sol.iterations = it;
    if (!next.is_finite()) {
      // Diverged past floating-point range; report through the trace.
      p = next;
      if (opts.trace_stride > 0)
        sol.trace.push_back({it, p, arma::accu(p)});
      break;
    }
    double rel_change = 0.0;
    for (arma::uword k = 0; k < n; ++k)
      rel_change = std::max(rel_change, std::abs(next(k) - p(k)) /
                                            std::max(p(k), kRelChangeGuard));
    p = next;
    if (opts.trace_stride > 0 && (it % opts.trace_stride == 0))
      sol.trace.push_back({it, p, arma::accu(p)});

    if (rel_change <= opts.tol) {
      const arma::vec gs = secrecy_sinr_at(coeffs, p);
      const double resid = arma::abs((gs - coeffs.gamma) / coeffs.gamma).max();
      if (resid <= opts.tol) {
        sol.converged = true;
        sol.residual = resid;
        break;
      }
    }
  }

  sol.p = p;
  if (!sol.converged) {
    if (p.is_finite()) {
      const arma::vec gs = secrecy_sinr_at(coeffs, p);
      sol.residual = arma::abs((gs - coeffs.gamma) / coeffs.gamma).max();
    } else {
      sol.residual = arma::datum::inf;
    }
  }
  if (opts.trace_stride > 0 && (sol.trace.empty() ||
                                sol.trace.back().iter != sol.iterations))
    sol.trace.push_back({sol.iterations, p, arma::accu(p)});
  return sol;
}

power_solution fixed_point_solve(const interference_coefficients& coeffs,
                                 const solve_options& opts) {
  return fixed_point_solve(coeffs, arma::zeros<arma::vec>(coeffs.n_beams()),
                           opts);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void fold_margin(inequality_check& chk, double margin) {
  chk.margin = std::min(chk.margin, margin);
  if (!(margin > 0.0))
    chk.pass = false;
}

} // namespace

condition_report check_standard_conditions(const interference_coefficients& coeffs) {
  const arma::uword n = coeffs.n_beams();
  condition_report rep;
  rep.cond1 = {true, kInf};
  for (auto& c : rep.cond2)
    c = {true, kInf};
  rep.cond3 = {true, kInf};
  rep.cond2_applicable = coeffs.variant == csi_variant::fixed_bf;
  rep.cond3_applicable = coeffs.variant == csi_variant::fixed_bf;

  for (arma::uword k = 0; k < n; ++k)
    fold_margin(rep.cond1, coeffs.b(k) - coeffs.c(k));

  if (rep.cond2_applicable) {
    for (arma::uword k = 0; k < n; ++k) {
      const double b = coeffs.b(k);
      const double c = coeffs.c(k);
      const arma::rowvec hk = coeffs.h_tilde_k.row(k);
      const arma::rowvec he = coeffs.h_tilde_e.row(k);

      for (arma::uword j = 0; j < n; ++j) {
        if (j == k)
          continue; // structural zeros on both sides
        if (hk(j) != 0.0 || he(j) != 0.0) {
          fold_margin(rep.cond2[0], b * hk(j) - c * he(j));
          fold_margin(rep.cond2[1], b * he(j) - c * hk(j));
        }
        for (arma::uword i = 0; i < n; ++i) {
          if (i == k)
            continue;
          const double lhs_kk = hk(i) * hk(j);
          const double lhs_ee = he(i) * he(j);
          if (lhs_kk != 0.0 || lhs_ee != 0.0) {
            fold_margin(rep.cond2[2], b * lhs_kk - c * lhs_ee);
            fold_margin(rep.cond2[3], b * lhs_ee - c * lhs_kk);
          }
        }
      }

      // Condition 3: sqrt(b [h~k]_j) h~e > sqrt(c [h~e]_j) h~k, elementwise,
      // for every j != k.
      for (arma::uword j = 0; j < n; ++j) {
        if (j == k)
          continue;
        const double lhs_scale = std::sqrt(b * hk(j));
        const double rhs_scale = std::sqrt(c * he(j));
        for (arma::uword l = 0; l < n; ++l) {
          if (l == k)
            continue;
          const double lhs = lhs_scale * he(l);
          const double rhs = rhs_scale * hk(l);
          if (lhs != 0.0 || rhs != 0.0)
            fold_margin(rep.cond3, lhs - rhs);
        }
      }
    }
  }

  rep.overall = rep.cond1.pass;
  if (rep.cond2_applicable)
    for (const auto& c : rep.cond2)
      rep.overall = rep.overall && c.pass;
  if (rep.cond3_applicable)
    rep.overall = rep.overall && rep.cond3.pass;
  return rep;
}

probe_report standard_property_probe(const interference_coefficients& coeffs,
                                     std::uint64_t seed,
                                     arma::uword n_samples) {
  if (n_samples < 1)
    throw std::invalid_argument("probe needs at least one sample");
  const arma::uword n = coeffs.n_beams();

  // Sampling scale around the operating range of the update.
  double scale = 0.0;
  for (arma::uword k = 0; k < n; ++k)
    if (coeffs.b(k) > 0.0)
      scale = std::max(scale, coeffs.gamma(k) * coeffs.sigma2 / coeffs.b(k));
  if (!(scale > 0.0))
    scale = coeffs.sigma2;
  scale *= 10.0 * static_cast<double>(n);

  probe_report rep;
  rep.n_samples = n_samples;
  rep.worst_positivity_margin = kInf;
  rep.worst_monotonicity_margin = kInf;
  rep.worst_scalability_margin = kInf;
  rep.min_f = kInf;
  rep.max_psi = -kInf;
  rep.max_delta = -kInf;

  for (arma::uword t = 0; t < n_samples; ++t) {
    arma::vec p(n), p_lo(n);
    for (arma::uword j = 0; j < n; ++j) {
      p(j) = scale * rng::uniform01(seed, rng::kStreamProbe, t, 2 * j);
      p_lo(j) = p(j) * rng::uniform01(seed, rng::kStreamProbe, t, 2 * j + 1);
    }
    const double rho =
        10.0 - 9.0 * rng::uniform01(seed, rng::kStreamProbe, t, 2 * n); // (1, 10]

    arma::vec ip, ip_lo, ip_rho;
    try {
      ip = power_update(coeffs, p);
      ip_lo = power_update(coeffs, p_lo);
      ip_rho = power_update(coeffs, rho * p);
    } catch (const infeasible_error&) {
      ++rep.infeasible_samples;
      continue;
    }
    ++rep.evaluated;

    const double pos = ip.min();
    rep.worst_positivity_margin = std::min(rep.worst_positivity_margin, pos);
    if (!(pos > 0.0))
      ++rep.positivity_violations;

    const double mono = (ip - ip_lo).min();
    rep.worst_monotonicity_margin = std::min(rep.worst_monotonicity_margin, mono);
    if (mono < 0.0)
      ++rep.monotonicity_violations;

    const double scal = (rho * ip - ip_rho).min();
    rep.worst_scalability_margin = std::min(rep.worst_scalability_margin, scal);
    if (!(scal > 0.0))
      ++rep.scalability_violations;

    // Proof-internal diagnostics at the sampled points.
    for (arma::uword k = 0; k < n; ++k) {
      const double dk = coeffs.sigma2 + arma::dot(p, coeffs.h_tilde_k.row(k).t());
      const double de = coeffs.sigma2 + arma::dot(p, coeffs.h_tilde_e.row(k).t());
      const double f = coeffs.b(k) / dk - coeffs.c(k) / de;
      rep.min_f = std::min(rep.min_f, f);
      for (arma::uword j = 0; j < n; ++j) {
        if (j == k)
          continue;
        if (coeffs.h_tilde_k(k, j) == 0.0 && coeffs.h_tilde_e(k, j) == 0.0)
          continue;
        const double psi = 2.0 * coeffs.c(k) * coeffs.h_tilde_e(k, j) * dk * dk -
                           2.0 * coeffs.b(k) * coeffs.h_tilde_k(k, j) * de * de;
        rep.max_psi = std::max(rep.max_psi, psi);
      }
      const double pk = arma::dot(p, coeffs.h_tilde_k.row(k).t());
      const double pe = arma::dot(p, coeffs.h_tilde_e.row(k).t());
      const double s2 = coeffs.sigma2;
      const double delta =
          s2 * s2 * s2 * (1.0 - rho) * (coeffs.b(k) - coeffs.c(k)) +
          s2 * s2 * (1.0 - rho * rho) * (coeffs.b(k) * pe - coeffs.c(k) * pk) +
          s2 * rho * (1.0 - rho) *
              (coeffs.b(k) * pe * pe - coeffs.c(k) * pk * pk);
      rep.max_delta = std::max(rep.max_delta, delta);
    }
  }
  return rep;
}

arma::vec closed_form_power(const channel_realization& chan,
                            const beamforming_matrix& W,
                            const arma::vec& gamma) {
  chan.validate();
  W.validate();
  if (W.n_elements() != chan.n_elements() || W.n_beams() != chan.n_beams())
    throw std::invalid_argument("beamforming matrix does not match channel dimensions");
  const arma::uword n = chan.n_beams();
  if (gamma.n_elem != n)
    throw std::invalid_argument("target vector length does not match beam count");
  if (!gamma.is_finite() || arma::any(gamma < 0.0))
    throw std::invalid_argument("secrecy SINR targets must be finite and >= 0");

  arma::vec p(n);
  for (arma::uword k = 0; k < n; ++k) {
    const double gain = quadratic_gain(chan.H.col(k), W.W.col(k));
    if (gain < 1e-20)
      throw zero_gain_error(k);
    p(k) = gamma(k) * chan.sigma2 / gain;
  }
  return p;
}

} // namespace satsec
