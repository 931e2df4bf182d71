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

#ifndef QICD_MC_HPP
#define QICD_MC_HPP

/// Trial-level simulation of the conversion receiver. Each trial draws a
/// heterodyne record under a hypothesis, forms the conditional mode, applies
/// a concrete receiver, and scores the decision. Results are bit-identical
/// for a given seed regardless of thread count: trials are indexed, each
/// index seeds its own counter-based stream, and reduction is in index
/// order.

#include <cstdint>
#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "qicd/protocol.hpp"
#include "qicd/rng.hpp"

namespace qicd::mc {

enum class Hypothesis { absent, present };

/// One simulated heterodyne record.
struct HeterodyneRecord {
  std::vector<std::complex<double>> alphas;  // empty when sampled directly
  double norm = 0.0;                         // sqrt(sum |alpha|^2)
  double x = 0.0;                            // conditional displacement power
  Hypothesis hypothesis = Hypothesis::absent;
};

/// Declare present when the photon count exceeds `threshold`.
struct PhotonCountReceiver {
  std::uint64_t threshold = 0;
};

/// Declare present inside the per-record optimal quadrature interval, or
/// against a fixed threshold when one is given.
struct HomodyneReceiver {
  std::optional<double> threshold;
};

/// Scores each trial by the record's ideal error probability instead of a
/// physical decision; its mean estimates the receiver-independent bound and
/// is labeled as such in reports.
struct HelstromOracleReceiver {};

using Receiver =
    std::variant<PhotonCountReceiver, HomodyneReceiver, HelstromOracleReceiver>;

struct TrialConfig {
  protocol::ProtocolParams params;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  Receiver receiver = PhotonCountReceiver{};
  int threads = 0;           // 0 = hardware concurrency
  bool full_records = false; // keep per-mode amplitudes (memory heavy)
};

struct TrialResult {
  double empirical_error = 0.0;
  double ci95_lo = 0.0;      // Wilson 95% interval
  double ci95_hi = 0.0;
  double analytic_ref = 0.0; // matching quadrature value for this receiver
  std::uint64_t trials = 0;
  std::uint64_t errors = 0;
};

/// Draws a full per-mode record for `hyp` using stream `stream` of `seed`.
HeterodyneRecord sample_record(const protocol::ProtocolParams& p,
                               Hypothesis hyp, std::uint64_t seed,
                               std::uint64_t stream);

/// Draws only x from its gamma law for `hyp` (the fast path).
double sample_x_direct(const protocol::ProtocolParams& p, Hypothesis hyp,
                       Rng& rng);

/// Runs the configured number of trials, each drawing its hypothesis with
/// equal priors from its own stream.
TrialResult run_trials(const TrialConfig& cfg);

/// Two-sided Kolmogorov-Smirnov distance between samples and a reference
/// CDF evaluated at the sorted sample points.
double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf);

/// Wilson score interval for `errors` failures in `trials`.
void wilson_interval(std::uint64_t errors, std::uint64_t trials, double* lo,
                     double* hi);

}  // namespace qicd::mc

#endif  // QICD_MC_HPP
