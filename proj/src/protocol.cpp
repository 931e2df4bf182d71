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

#include "qicd/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "qicd/fock.hpp"

namespace qicd::protocol {

void ProtocolParams::validate() const {
  if (!(n_s >= 0.0) || !std::isfinite(n_s)) {
    throw std::domain_error("ProtocolParams: n_s must be finite and >= 0");
  }
  if (!(kappa >= 0.0 && kappa <= 1.0)) {
    throw std::domain_error("ProtocolParams: kappa must be in [0, 1]");
  }
  if (!(n_b >= 0.0) || !std::isfinite(n_b)) {
    throw std::domain_error("ProtocolParams: n_b must be finite and >= 0");
  }
  if (!std::isfinite(theta)) {
    throw std::domain_error("ProtocolParams: theta must be finite");
  }
  if (m < 1) {
    throw std::domain_error("ProtocolParams: need at least one mode pair");
  }
}

ConditionalState conditional_params(const ProtocolParams& p) {
  p.validate();
  double denom = p.kappa * p.n_s + p.n_b + 1.0;
  ConditionalState c;
  c.mu = std::sqrt(p.kappa * p.n_s * (p.n_s + 1.0)) / denom;
  c.xi = p.kappa * p.n_s * (p.n_s + 1.0) / (2.0 * denom);
  c.e_therm = p.n_s * (p.n_b + p.kappa - 1.0) / (p.n_b + p.kappa * p.n_s + 1.0);
  return c;
}

double heterodyne_variance(const ProtocolParams& p) {
  p.validate();
  return 0.5 * (p.n_b + p.kappa * p.n_s + 1.0);
}

std::complex<double> combine_displacement(
    const ConditionalState& c,
    const std::vector<std::complex<double>>& alphas, double theta) {
  double power = 0.0;
  for (const auto& a : alphas) power += std::norm(a);
  return std::polar(c.mu * std::sqrt(power), -theta);
}

void FadingSpec::validate() const {
  if (kappa.empty() || kappa.size() != weight.size()) {
    throw std::domain_error("FadingSpec: branch lists must match and be "
                            "non-empty");
  }
  double sum = 0.0;
  for (size_t i = 0; i < kappa.size(); ++i) {
    if (!(kappa[i] >= 0.0 && kappa[i] <= 1.0)) {
      throw std::domain_error("FadingSpec: kappa outside [0, 1]");
    }
    if (!(weight[i] >= 0.0) || !std::isfinite(weight[i])) {
      throw std::domain_error("FadingSpec: weights must be finite and >= 0");
    }
    sum += weight[i];
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("FadingSpec: weights must sum to 1");
  }
}

std::vector<double> fading_average_pmf(const ProtocolParams& p,
                                       const FadingSpec& fading, double x,
                                       int count) {
  p.validate();
  fading.validate();
  if (!(x >= 0.0)) throw std::domain_error("fading_average_pmf: x < 0");
  if (count < 1) throw std::domain_error("fading_average_pmf: count < 1");
  ConditionalState ref = conditional_params(p);
  if (ref.mu == 0.0 && x > 0.0) {
    throw std::domain_error(
        "fading_average_pmf: reference carries no signal but the record "
        "power is nonzero");
  }
  std::vector<double> out(count, 0.0);
  for (size_t b = 0; b < fading.kappa.size(); ++b) {
    ProtocolParams pb = p;
    pb.kappa = fading.kappa[b];
    ConditionalState cb = conditional_params(pb);
    double xb =
        (x == 0.0) ? 0.0 : x * (cb.mu * cb.mu) / (ref.mu * ref.mu);
    auto pmf = fock::photon_number_pmf(
        fock::StateSpec::displaced_thermal(std::sqrt(xb), cb.e_therm), count);
    for (int k = 0; k < count; ++k) out[k] += fading.weight[b] * pmf[k];
  }
  return out;
}

}  // namespace qicd::protocol
