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

#ifndef QICD_QPG_HPP
#define QICD_QPG_HPP

/// Frequency-selective mode extraction: a cavity-based gate that routes one
/// comb line of the return field into a separate port while passing the
/// others, characterized by its transmission/reflection response on the
/// comb.

#include <complex>
#include <cstddef>
#include <vector>

namespace qicd::qpg {

struct QpgSpec {
  double gamma = 0.0;    // cavity linewidth, rad/s
  double eta = 0.0;      // conversion coupling, so eta^2 / duration is a rate
  double duration = 0.0; // comb period T, seconds
  std::vector<std::complex<double>> pump;  // unit-norm pump spectrum

  void validate() const;
  /// True when |gamma T - eta^2| <= 1e-9 gamma T, the impedance condition
  /// that makes the resonant line convert completely.
  bool matched() const;

  static QpgSpec matched_design(
      double gamma, double duration,
      std::vector<std::complex<double>> pump = {{1.0, 0.0}});
};

/// Frequency response at comb line n (omega = 2 pi n / T).
struct TransferPoint {
  double omega = 0.0;
  std::complex<double> t{0.0, 0.0};  // conversion amplitude
  std::complex<double> r{0.0, 0.0};  // pass-through amplitude
};

TransferPoint transfer(const QpgSpec& s, std::int64_t n);

/// Conversion at the resonant line and the worst off-resonant leakage
/// within `window` lines on each side.
struct SelectivityReport {
  double conversion_0 = 0.0;     // |t(0)|^2
  double worst_crosstalk = 0.0;  // max |t(n)|^2 over 1 <= |n| <= window
  bool matched = false;
};

SelectivityReport selectivity_report(const QpgSpec& s, int window = 100);

/// |sum_m conj(beta_{m+shift}) beta_m| for a unit-norm spectrum; shift 0
/// returns exactly 1. Measures how well the sampled spectrum approximates
/// a delta autocorrelation.
double autocorr_check(const std::vector<std::complex<double>>& beta,
                      std::int64_t shift);

/// Overlap sum_l beta_{-l} conj(w_l) between the comb weights (indexed
/// symmetrically around zero, odd length) and a target temporal mode
/// (same indexing).
std::complex<double> temporal_mode_overlap(
    const std::vector<std::complex<double>>& beta,
    const std::vector<std::complex<double>>& w);

}  // namespace qicd::qpg

#endif  // QICD_QPG_HPP
