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

#ifndef satsec_errors_H
#define satsec_errors_H

#include <cstdint>
#include <stdexcept>
#include <string>

namespace satsec {

// Power update hit a nonpositive denominator: the secrecy targets are not
// attainable from the current iterate. Carries the offending beam and the
// denominator value for diagnosis.
class infeasible_error : public std::runtime_error {
public:
  infeasible_error(std::uint64_t beam, double denominator)
      : std::runtime_error("infeasible power update at beam " +
                           std::to_string(beam + 1) + ": denominator " +
                           std::to_string(denominator) + " <= 0"),
        beam_(beam), denominator_(denominator) {}

  std::uint64_t beam() const { return beam_; }
  double denominator() const { return denominator_; }

private:
  std::uint64_t beam_;
  double denominator_;
};

// A beam's useful gain vanished (channel inside the constraint span, or a
// zero target gain in the closed-form power solution).
class zero_gain_error : public std::runtime_error {
public:
  explicit zero_gain_error(std::uint64_t beam)
      : std::runtime_error("beam " + std::to_string(beam + 1) +
                           " has vanishing useful gain"),
        beam_(beam) {}

  std::uint64_t beam() const { return beam_; }

private:
  std::uint64_t beam_;
};

} // namespace satsec

#endif
