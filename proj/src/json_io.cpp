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

#include "satsec/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace satsec {

namespace {

std::complex<double> complex_from_json(const nlohmann::json& j,
                                       const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument(where + ": complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json complex_to_json(const std::complex<double>& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

} // namespace

nlohmann::json complex_matrix_to_json(const arma::cx_mat& A) {
  nlohmann::json rows = nlohmann::json::array();
  for (arma::uword i = 0; i < A.n_rows; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (arma::uword j = 0; j < A.n_cols; ++j)
      row.push_back(complex_to_json(A(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

arma::cx_mat complex_matrix_from_json(const nlohmann::json& j,
                                      const std::string& where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(where + ": expected a nonempty array of rows");
  const std::size_t n_rows = j.size();
  if (!j[0].is_array() || j[0].empty())
    throw std::invalid_argument(where + ": rows must be nonempty arrays");
  const std::size_t n_cols = j[0].size();
  arma::cx_mat A(n_rows, n_cols);
  for (std::size_t i = 0; i < n_rows; ++i) {
    if (!j[i].is_array() || j[i].size() != n_cols)
      throw std::invalid_argument(where + ": ragged rows");
    for (std::size_t c = 0; c < n_cols; ++c)
      A(i, c) = complex_from_json(j[i][c], where);
  }
  return A;
}

nlohmann::json complex_vector_to_json(const arma::cx_vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (arma::uword i = 0; i < v.n_elem; ++i)
    out.push_back(complex_to_json(v(i)));
  return out;
}

arma::cx_vec complex_vector_from_json(const nlohmann::json& j,
                                      const std::string& where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(where + ": expected a nonempty array");
  arma::cx_vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v(i) = complex_from_json(j[i], where);
  return v;
}

nlohmann::json to_json(const channel_realization& chan) {
  return {{"H", complex_matrix_to_json(chan.H)},
          {"h_e", complex_vector_to_json(chan.h_e)},
          {"sigma2_watts", chan.sigma2}};
}

channel_realization channel_from_json(const nlohmann::json& j) {
  for (const char* key : {"H", "h_e", "sigma2_watts"})
    if (!j.contains(key))
      throw std::invalid_argument(std::string("channel file: missing key `") +
                                  key + "`");
  channel_realization chan;
  chan.H = complex_matrix_from_json(j.at("H"), "H");
  chan.h_e = complex_vector_from_json(j.at("h_e"), "h_e");
  if (!j.at("sigma2_watts").is_number())
    throw std::invalid_argument("channel file: sigma2_watts must be a number (watts)");
  chan.sigma2 = j.at("sigma2_watts").get<double>();
  chan.validate();
  return chan;
}

nlohmann::json to_json(const beamforming_matrix& W) {
  return {{"W", complex_matrix_to_json(W.W)}};
}

beamforming_matrix beamforming_from_json(const nlohmann::json& j) {
  if (!j.contains("W"))
    throw std::invalid_argument("beamforming file: missing key `W`");
  beamforming_matrix bf;
  bf.W = complex_matrix_from_json(j.at("W"), "W");
  bf.validate();
  return bf;
}

nlohmann::json to_json(const power_solution& sol) {
  nlohmann::json trace = nlohmann::json::array();
  for (const trace_point& pt : sol.trace) {
    trace.push_back({{"iter", pt.iter},
                     {"p_watts", std::vector<double>(pt.p.begin(), pt.p.end())},
                     {"total_power_w", pt.total}});
  }
  return {{"p_watts", std::vector<double>(sol.p.begin(), sol.p.end())},
          {"converged", sol.converged},
          {"iterations", sol.iterations},
          {"residual", sol.residual},
          {"trace", std::move(trace)}};
}

std::string trace_to_csv(const power_solution& sol) {
  std::string out = "iter,total_power_w";
  for (arma::uword k = 0; k < sol.p.n_elem; ++k)
    out += ",p_" + std::to_string(k + 1);
  out += "\n";
  char buf[64];
  for (const trace_point& pt : sol.trace) {
    out += std::to_string(pt.iter);
    std::snprintf(buf, sizeof(buf), ",%.12g", pt.total);
    out += buf;
    for (arma::uword k = 0; k < pt.p.n_elem; ++k) {
      std::snprintf(buf, sizeof(buf), ",%.12g", pt.p(k));
      out += buf;
    }
    out += "\n";
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot open for writing: " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
      throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

} // namespace satsec
