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

#ifndef satsec_json_io_H
#define satsec_json_io_H

#include <string>

#include <armadillo>
#include <json.hpp>

#include "satsec/beamform.hpp"
#include "satsec/channel.hpp"
#include "satsec/powerctl.hpp"

namespace satsec {

// Complex values serialize as [re, im]; matrices as row-major arrays of
// rows.
nlohmann::json complex_matrix_to_json(const arma::cx_mat& A);
arma::cx_mat complex_matrix_from_json(const nlohmann::json& j,
                                      const std::string& where);
nlohmann::json complex_vector_to_json(const arma::cx_vec& v);
arma::cx_vec complex_vector_from_json(const nlohmann::json& j,
                                      const std::string& where);

// Channel files carry "H", "h_e" and "sigma2_watts".
nlohmann::json to_json(const channel_realization& chan);
channel_realization channel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const beamforming_matrix& W);
beamforming_matrix beamforming_from_json(const nlohmann::json& j);

nlohmann::json to_json(const power_solution& sol);

// Trace rows as `iter,total_power_w,p_1,...,p_K`.
std::string trace_to_csv(const power_solution& sol);

// Writes via a temp file in the same directory plus rename, so readers
// never observe a half-written file.
void write_file_atomic(const std::string& path, const std::string& content);

} // namespace satsec

#endif
