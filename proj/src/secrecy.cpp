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

#include "satsec/secrecy.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace satsec {

void rate_table::validate() const {
  if (rows.empty())
    throw std::invalid_argument("rate table has no rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!std::isfinite(rows[i].efficiency_bps_hz) ||
        rows[i].efficiency_bps_hz <= 0.0)
      throw std::invalid_argument("rate table efficiencies must be finite and > 0");
    if (!std::isfinite(rows[i].required_sinr_db))
      throw std::invalid_argument("rate table thresholds must be finite");
    if (i > 0) {
      if (rows[i].efficiency_bps_hz <= rows[i - 1].efficiency_bps_hz)
        throw std::invalid_argument("rate table efficiencies must be strictly ascending");
      if (rows[i].required_sinr_db <= rows[i - 1].required_sinr_db)
        throw std::invalid_argument("rate table thresholds must be strictly ascending");
    }
  }
}

rate_table load_rate_table_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open rate table file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument("rate table file is empty: " + path);
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != "efficiency_bps_hz,required_sinr_db")
    throw std::invalid_argument(
        "rate table header must be `efficiency_bps_hz,required_sinr_db`, got `" +
        line + "`");
  rate_table table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::istringstream row(line);
    std::string eff, thr;
    if (!std::getline(row, eff, ',') || !std::getline(row, thr))
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": expected `efficiency,threshold_db`");
    try {
      table.rows.push_back({std::stod(eff), std::stod(thr)});
    } catch (const std::exception&) {
      throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                  ": cannot parse numeric values (bits/s/Hz, dB)");
    }
  }
  table.validate();
  return table;
}

namespace {

double quadratic_gain(const arma::cx_vec& h, const arma::cx_vec& w) {
  const std::complex<double> g = arma::dot(h, w); // h^T w, no conjugation
  return std::norm(g);
}

void check_sinr_inputs(arma::uword k, const channel_realization& chan,
                       const beamforming_matrix& W, const arma::vec& p) {
  chan.validate();
  W.validate();
  if (W.n_elements() != chan.n_elements() || W.n_beams() != chan.n_beams())
    throw std::invalid_argument("beamforming matrix does not match channel dimensions");
  if (k >= chan.n_beams())
    throw std::out_of_range("beam index " + std::to_string(k) +
                            " out of range (K = " +
                            std::to_string(chan.n_beams()) + ")");
  if (p.n_elem != chan.n_beams())
    throw std::invalid_argument("power vector length does not match beam count");
  if (!p.is_finite() || arma::any(p < 0.0))
    throw std::invalid_argument("powers must be finite and >= 0 (watts)");
}

double sinr_through(const arma::cx_vec& h, arma::uword k,
                    const beamforming_matrix& W, const arma::vec& p,
                    double sigma2) {
  double interference = 0.0;
  for (arma::uword j = 0; j < W.n_beams(); ++j) {
    if (j == k)
      continue;
    interference += p(j) * quadratic_gain(h, W.W.col(j));
  }
  return p(k) * quadratic_gain(h, W.W.col(k)) / (sigma2 + interference);
}

} // namespace

double sinr_legitimate(arma::uword k, const channel_realization& chan,
                       const beamforming_matrix& W, const arma::vec& p) {
  check_sinr_inputs(k, chan, W, p);
  return sinr_through(chan.H.col(k), k, W, p, chan.sigma2);
}

double sinr_eavesdropper(arma::uword k, const channel_realization& chan,
                         const beamforming_matrix& W, const arma::vec& p) {
  check_sinr_inputs(k, chan, W, p);
  return sinr_through(chan.h_e, k, W, p, chan.sigma2);
}

double secrecy_sinr(double gamma_k, double gamma_ek) {
  if (gamma_k < 0.0 || gamma_ek < 0.0)
    throw std::invalid_argument("SINRs must be >= 0");
  return (gamma_k - gamma_ek) / (1.0 + gamma_ek);
}

double secrecy_rate(double gamma_s) {
  if (!(gamma_s > -1.0))
    throw std::domain_error("secrecy SINR must exceed -1");
  return std::max(0.0, std::log2(1.0 + gamma_s));
}

sinr_report evaluate_sinr(const channel_realization& chan,
                          const beamforming_matrix& W, const arma::vec& p) {
  const arma::uword n = chan.n_beams();
  sinr_report report;
  report.gamma.set_size(n);
  report.gamma_e.set_size(n);
  report.gamma_s.set_size(n);
  for (arma::uword k = 0; k < n; ++k) {
    report.gamma(k) = sinr_legitimate(k, chan, W, p);
    report.gamma_e(k) = sinr_eavesdropper(k, chan, W, p);
    report.gamma_s(k) = secrecy_sinr(report.gamma(k), report.gamma_e(k));
  }
  return report;
}

double required_sinr(double rate_target_bps_hz, const rate_mapping& mapping) {
  if (!(rate_target_bps_hz >= 0.0))
    throw std::invalid_argument("rate target must be >= 0 bits/s/Hz");
  if (std::holds_alternative<gaussian_mapping>(mapping))
    return std::exp2(rate_target_bps_hz) - 1.0;

  const rate_table& table = std::get<rate_table>(mapping);
  table.validate();
  for (const rate_table_row& row : table.rows) {
    if (row.efficiency_bps_hz >= rate_target_bps_hz)
      return db_to_linear(row.required_sinr_db);
  }
  throw std::domain_error("rate target " + std::to_string(rate_target_bps_hz) +
                          " bits/s/Hz exceeds the table's top efficiency " +
                          std::to_string(table.rows.back().efficiency_bps_hz));
}

} // namespace satsec
