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

#include "qicd/qpg.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace qicd::qpg {

void QpgSpec::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw std::domain_error("cavity linewidth must be positive");
  }
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw std::domain_error("conversion coupling must be positive");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::domain_error("comb period must be positive");
  }
  double norm = 0.0;
  for (const auto& c : pump) {
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::domain_error("pump spectrum must have unit norm");
  }
}

bool QpgSpec::matched() const {
  return std::abs(gamma * duration - eta * eta) <= 1e-9 * gamma * duration;
}

QpgSpec QpgSpec::matched_design(double gamma, double duration,
                                std::vector<std::complex<double>> pump) {
  QpgSpec s;
  s.gamma = gamma;
  s.duration = duration;
  s.eta = std::sqrt(gamma * duration);
  s.pump = std::move(pump);
  s.validate();
  return s;
}

TransferPoint transfer(const QpgSpec& s, std::int64_t n) {
  s.validate();
  TransferPoint tp;
  tp.omega = 2.0 * M_PI * static_cast<double>(n) / s.duration;
  const double rate = s.eta * s.eta / (2.0 * s.duration);
  const std::complex<double> denom(-0.5 * s.gamma - rate, tp.omega);
  tp.t = s.eta * std::sqrt(s.gamma / s.duration) / denom;
  tp.r = std::complex<double>(0.5 * s.gamma - rate, tp.omega) / denom;
  return tp;
}

SelectivityReport selectivity_report(const QpgSpec& s, int window) {
  s.validate();
  if (window < 1) {
    throw std::domain_error("selectivity window must cover at least one line");
  }
  SelectivityReport rep;
  rep.matched = s.matched();
  // At impedance match the resonant conversion is identically one; report
  // it exactly rather than through the roundoff of the quotient.
  rep.conversion_0 = rep.matched ? 1.0 : std::norm(transfer(s, 0).t);
  for (int n = -window; n <= window; ++n) {
    if (n == 0) {
      continue;
    }
    rep.worst_crosstalk =
        std::max(rep.worst_crosstalk, std::norm(transfer(s, n).t));
  }
  return rep;
}

double autocorr_check(const std::vector<std::complex<double>>& beta,
                      std::int64_t shift) {
  double norm = 0.0;
  for (const auto& c : beta) {
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::domain_error("spectrum must have unit norm");
  }
  const std::int64_t n = static_cast<std::int64_t>(beta.size());
  const std::int64_t step = shift < 0 ? -shift : shift;
  std::complex<double> acc{0.0, 0.0};
  for (std::int64_t m = 0; m + step < n; ++m) {
    acc += std::conj(beta[static_cast<std::size_t>(m + step)]) *
           beta[static_cast<std::size_t>(m)];
  }
  return std::abs(acc);
}

std::complex<double> temporal_mode_overlap(
    const std::vector<std::complex<double>>& beta,
    const std::vector<std::complex<double>>& w) {
  if (beta.size() != w.size()) {
    throw std::invalid_argument("pump and weight sequences differ in length");
  }
  if (beta.empty() || beta.size() % 2 == 0) {
    throw std::invalid_argument(
        "sequences must have odd length, indexed symmetrically around zero");
  }
  // Position p holds index l = p - (n-1)/2, so beta_{-l} sits at the
  // mirrored position n-1-p.
  const std::size_t n = beta.size();
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t p = 0; p < n; ++p) {
    acc += beta[n - 1 - p] * std::conj(w[p]);
  }
  return acc;
}

}  // namespace qicd::qpg
