// Copyright 2026 The qicd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QICD_RNG_HPP
#define QICD_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace qicd {

// Counter-seeded splitmix64 stream. Every (seed, stream) pair yields an
// independent deterministic sequence, so parallel trial loops can hand one
// stream to each trial and stay bit-reproducible under any thread count.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    state_ = mix(seed + 0x9E3779B97F4A7C15ULL * (stream + 1));
    state_ = mix(state_ ^ 0xBF58476D1CE4E5B9ULL);
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform on (0,1), never exactly 0 or 1.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal, Box-Muller with the second deviate cached.
  double normal() {
    if (has_cached_) {
      has_cached_ = false;
      return cached_;
    }
    double r = std::sqrt(-2.0 * std::log(uniform()));
    double phi = 6.283185307179586476925286766559 * uniform();
    cached_ = r * std::sin(phi);
    has_cached_ = true;
    return r * std::cos(phi);
  }

  // Circularly symmetric complex Gaussian with the given per-quadrature
  // variance.
  std::complex<double> complex_normal(double var_per_quadrature) {
    double s = std::sqrt(var_per_quadrature);
    return {s * normal(), s * normal()};
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace qicd

#endif
