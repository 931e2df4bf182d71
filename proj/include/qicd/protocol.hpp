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

#ifndef QICD_PROTOCOL_HPP
#define QICD_PROTOCOL_HPP

/// Scenario parameters of the entangled-probe detection protocol and the
/// conditional state reached after measuring every return mode.
///
/// Heterodyning the M return modes and phase-conjugately combining the
/// retained idlers leaves a single mode that is thermal when the target is
/// absent and a displaced thermal state when it is present. The displacement
/// magnitude is set by the measurement record through mu; its squared
/// magnitude x is gamma distributed across records.

#include <complex>
#include <cstdint>
#include <vector>

namespace qicd::protocol {

/// Free parameters of one operating point.
struct ProtocolParams {
  double n_s = 0.0;    // signal brightness per mode
  double kappa = 0.0;  // round-trip transmissivity, in [0, 1]
  double theta = 0.0;  // deterministic phase picked up on reflection
  double n_b = 0.0;    // background brightness per mode
  std::uint64_t m = 1; // number of signal-idler mode pairs

  void validate() const;
};

/// Conditional single-mode state parameters given the heterodyne record.
struct ConditionalState {
  double mu = 0.0;       // displacement per unit measurement amplitude
  double xi = 0.0;       // half mean of x per mode: x ~ Gamma(M, 2 xi)
  double e_therm = 0.0;  // residual thermal occupancy under target-present
  std::complex<double> displacement{0.0, 0.0};

  double x() const { return std::norm(displacement); }
};

/// Derives mu, xi and the residual occupancy for the target-present branch.
/// The returned displacement is zero; combine_displacement fills it in for
/// a concrete measurement record.
ConditionalState conditional_params(const ProtocolParams& p);

/// Per-quadrature variance of a single heterodyne outcome under
/// target-present; target-absent is the same expression at kappa = 0.
double heterodyne_variance(const ProtocolParams& p);

/// Displacement of the combined idler mode for a concrete record:
///   mu e^{-i theta} sqrt(sum |alpha_k|^2) up to a phase convention in
/// which the combined mode is rotated so the record only enters through
/// its total power.
std::complex<double> combine_displacement(const ConditionalState& c,
                                          const std::vector<std::complex<double>>& alphas,
                                          double theta);

/// Discrete fading law: transmissivity kappa_i with probability weight_i.
struct FadingSpec {
  std::vector<double> kappa;
  std::vector<double> weight;

  void validate() const;
};

/// Photon-number distribution of the conditional state averaged over the
/// fading law. The record is held fixed in the measured value x obtained
/// under reference parameters `p`; each fading branch rescales it by the
/// ratio of its mu^2 to the reference mu^2.
std::vector<double> fading_average_pmf(const ProtocolParams& p,
                                       const FadingSpec& fading, double x,
                                       int count);

}  // namespace qicd::protocol

#endif  // QICD_PROTOCOL_HPP
