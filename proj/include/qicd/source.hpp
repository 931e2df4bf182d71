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

#ifndef QICD_SOURCE_HPP
#define QICD_SOURCE_HPP

/// Two-mode squeezed source model: Bogoliubov coefficients from the pump
/// coupling, usable frequency-pair count from the time-bandwidth product,
/// and the bandwidth budget implied by a phase-mismatch tolerance.

#include <complex>
#include <cstdint>

namespace qicd::source {

struct SourceSpec {
  std::complex<double> coupling{0.0, 0.0};  // pump coupling times length
  double duration = 0.0;                    // pulse duration, seconds
  double bandwidth = 0.0;                   // phase-matched width, rad/s
  double mismatch_coeff = 0.0;              // quadratic mismatch coeff, s^2

  void validate() const;
};

/// Squeezing transformation coefficients; G^2 - |g|^2 = 1 and the per-pair
/// brightness is |g|^2.
struct BogoliubovPair {
  double G = 1.0;
  std::complex<double> g{0.0, 0.0};

  double n_s() const { return std::norm(g); }
};

BogoliubovPair bogoliubov(const SourceSpec& s);

/// Signal-idler pair count supported by the comb: indices -l..l around the
/// carrier, so modes = 2l + 1.
struct ModeCount {
  std::int64_t l = 0;
  std::uint64_t modes = 1;
};

ModeCount mode_count(const SourceSpec& s);

/// Largest bandwidth (rad/s) whose quadratic phase mismatch stays within
/// `budget` radians: mismatch_coeff * (bw/2)^2 <= budget.
double bandwidth_from_mismatch(double mismatch_coeff, double budget);

}  // namespace qicd::source

#endif  // QICD_SOURCE_HPP
