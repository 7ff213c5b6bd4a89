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

#ifndef satsec_rng_H
#define satsec_rng_H

#include <cmath>
#include <cstdint>

namespace satsec::rng {

// Counter-based generator "satsec-prng-v1". Every draw is addressed by a
// (seed, stream, i, j) tuple instead of a sequential state, so enlarging a
// matrix along M or K never reshuffles entries that already existed, and
// draws are independent of evaluation order.
inline constexpr char kGeneratorName[] = "satsec-prng-v1";

// Named sub-streams. Values are part of the generator contract.
inline constexpr std::uint64_t kStreamUserGains = 0;
inline constexpr std::uint64_t kStreamEavesdropperGains = 1;
inline constexpr std::uint64_t kStreamProbe = 2;
inline constexpr std::uint64_t kStreamEstimationErrorRe = 3;
inline constexpr std::uint64_t kStreamEstimationErrorIm = 4;

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t key(std::uint64_t seed, std::uint64_t stream,
                         std::uint64_t i, std::uint64_t j) {
  std::uint64_t z = splitmix64(seed);
  z = splitmix64(z ^ stream);
  z = splitmix64(z ^ i);
  z = splitmix64(z ^ j);
  return z;
}

// Uniform draw in [0, 1) with 53-bit resolution.
inline double uniform01(std::uint64_t seed, std::uint64_t stream,
                        std::uint64_t i, std::uint64_t j) {
  return static_cast<double>(key(seed, stream, i, j) >> 11) * 0x1.0p-53;
}

// Uniform phase in [0, 2*pi).
inline double phase(std::uint64_t seed, std::uint64_t stream,
                    std::uint64_t i, std::uint64_t j) {
  return 6.283185307179586476925286766559 * uniform01(seed, stream, i, j);
}

// Standard normal via Box-Muller on two keyed uniforms.
inline double normal(std::uint64_t seed, std::uint64_t stream,
                     std::uint64_t i, std::uint64_t j) {
  const double u1 =
      (static_cast<double>(key(seed, stream, i, 2 * j) >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(seed, stream, i, 2 * j + 1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(6.283185307179586476925286766559 * u2);
}

} // namespace satsec::rng

#endif
