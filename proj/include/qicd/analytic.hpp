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

#ifndef QICD_ANALYTIC_HPP
#define QICD_ANALYTIC_HPP

/// Error probabilities and exponents of the conversion receiver and its
/// benchmarks, obtained by quadrature over the gamma-distributed record
/// power x rather than by Monte Carlo.

#include <cstdint>
#include <vector>

#include "qicd/protocol.hpp"

namespace qicd::analytic {

/// Knobs for the quadrature and basis sizes; defaults suit every built-in
/// scenario.
struct QuadSettings {
  int nodes = 128;          // Gauss-Legendre nodes on the bulk window
  int cutoff_override = 0;  // force a basis dimension; 0 = automatic
};

/// Record-averaged minimum error probability of the conversion receiver:
/// the Helstrom value of the conditional pair, integrated over the gamma
/// law of x. kappa = 0 carries no signal, so the value is exactly 1/2.
double p_cd(const protocol::ProtocolParams& p, const QuadSettings& q = {});

/// Minimum error probability of the conditional pair at one fixed record
/// power x (the integrand of p_cd before averaging).
double conditional_slice_error(const protocol::ProtocolParams& p, double x,
                               const QuadSettings& q = {});

/// Exponential lower-bound benchmark value 1/4 e^{-beta M n_s}.
struct NgBound {
  double value = 0.0;
  double beta = 0.0;
  bool beta_infinite = false;  // kappa = 1 with zero background
};

NgBound ng_bound(const protocol::ProtocolParams& p);

/// Minimum error probability of the best classical probe at the same
/// energy: a coherent state of total mean photon number M kappa n_s against
/// the same background, decided by a Helstrom measurement.
double p_ci(const protocol::ProtocolParams& p, const QuadSettings& q = {});

/// Error of a photon-counting decision "declare present when n > threshold"
/// on the conditional mode, averaged over the record law.
double photon_count_error(const protocol::ProtocolParams& p,
                          std::uint64_t threshold,
                          const QuadSettings& q = {});

/// Best integer threshold and its error near the operating point.
struct CountEnvelope {
  double error = 0.0;
  std::uint64_t threshold = 0;
};

CountEnvelope best_photon_count(const protocol::ProtocolParams& p,
                                const QuadSettings& q = {});

/// Where the optimal counting threshold departs from zero as M grows.
struct ThresholdPlan {
  double epsilon = 0.0;      // solves the threshold crossing condition
  double n_opt_real = 0.0;   // real-valued optimal threshold at this M
  std::uint64_t n_opt_int = 0;  // its floor
  double m_star = 0.0;       // predicted M where the optimum leaves zero
  std::uint64_t best_int = 0;   // brute-force best integer threshold
  double best_error = 0.0;
};

ThresholdPlan optimal_threshold(const protocol::ProtocolParams& p,
                                const QuadSettings& q = {});

/// Error of a single-quadrature (homodyne) decision on the conditional
/// mode with the per-record optimal two-Gaussian test.
double homodyne_error(const protocol::ProtocolParams& p,
                      const QuadSettings& q = {});

/// Same receiver with one fixed decision threshold on the quadrature value.
double homodyne_error_fixed(const protocol::ProtocolParams& p,
                            double threshold, const QuadSettings& q = {});

/// Error of the optimal two-Gaussian test at a fixed record power x for
/// variances (2 n_s + 1) against (2 e + 1) and mean separation 2 sqrt(x).
double homodyne_slice_error(double n_s, double e, double x);

/// Declare-present quadrature interval of that test; lo > hi encodes an
/// empty interval (never declare present).
struct DecisionInterval {
  double lo = 0.0;
  double hi = 0.0;
};

DecisionInterval homodyne_decision_interval(double n_s, double e, double x);

/// Log-spaced grid of mode counts.
struct Grid {
  double m_min = 1e3;
  double m_max = 4e7;
  int points_per_decade = 50;

  std::vector<std::uint64_t> points() const;
};

/// Error probabilities along a grid of M, plus error exponents of the
/// counting envelope and of the classical benchmark and their ratio.
struct ErrorCurve {
  std::vector<std::uint64_t> m_grid;
  std::vector<double> p_cd;
  std::vector<double> p_ng;
  std::vector<double> p_ci;
  std::vector<double> p_count;  // best-integer-threshold counting error
  std::vector<std::uint64_t> count_threshold;
  std::vector<double> r_cd;     // centered-difference exponent of p_count
  std::vector<double> r_ci;     // closed-form classical exponent
  std::vector<double> ratio_db;
};

ErrorCurve compute_error_curve(const protocol::ProtocolParams& p,
                               const Grid& grid, const QuadSettings& q = {},
                               int threads = 0);

/// Centered-difference exponents r_i = -d ln P / d M on an arbitrary grid;
/// endpoints use one-sided differences.
std::vector<double> error_exponents(const std::vector<std::uint64_t>& m,
                                    const std::vector<double>& p);

/// Least-squares slope of -ln P against M restricted to [m_lo, m_hi].
double fitted_exponent(const std::vector<std::uint64_t>& m,
                       const std::vector<double>& p, double m_lo, double m_hi);

/// Closed-form error exponent of the classical benchmark, kappa n_s / 4 n_b.
double r_ci_exponent(const protocol::ProtocolParams& p);

}  // namespace qicd::analytic

#endif  // QICD_ANALYTIC_HPP
