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

#include "qicd/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <variant>
#include <vector>

#include "qicd/analytic.hpp"
#include "qicd/fock.hpp"
#include "qicd/specfn.hpp"

namespace qicd::mc {

namespace {

using protocol::ProtocolParams;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double quadrature_variance(const ProtocolParams& p, Hypothesis hyp) {
  return hyp == Hypothesis::present ? protocol::heterodyne_variance(p)
                                    : 0.5 * (p.n_b + 1.0);
}

std::uint64_t sample_thermal_count(double n_s, Rng& rng) {
  const double ratio = n_s / (1.0 + n_s);
  const double u = rng.uniform();
  double term = 1.0 - ratio;
  double cum = term;
  std::uint64_t n = 0;
  while (u >= cum && n < (1ULL << 32)) {
    term *= ratio;
    cum += term;
    ++n;
  }
  return n;
}

std::uint64_t sample_present_count(double x, double e, Rng& rng) {
  const fock::StateSpec spec =
      fock::StateSpec::displaced_thermal(std::sqrt(x), e);
  const int count = fock::required_cutoff(spec, 1e-9);
  const std::vector<double> pmf = fock::photon_number_pmf(spec, count);
  const double u = rng.uniform();
  double cum = 0.0;
  for (int n = 0; n < count; ++n) {
    cum += pmf[static_cast<std::size_t>(n)];
    if (u < cum) {
      return static_cast<std::uint64_t>(n);
    }
  }
  return static_cast<std::uint64_t>(count - 1);  // tail mass below 1e-9
}

}  // namespace

HeterodyneRecord sample_record(const ProtocolParams& p, Hypothesis hyp,
                               std::uint64_t seed, std::uint64_t stream) {
  p.validate();
  Rng rng(seed, stream);
  const protocol::ConditionalState c = protocol::conditional_params(p);
  const double var = quadrature_variance(p, hyp);
  HeterodyneRecord rec;
  rec.hypothesis = hyp;
  rec.alphas.resize(static_cast<std::size_t>(p.m));
  double sum = 0.0;
  for (auto& a : rec.alphas) {
    a = rng.complex_normal(var);
    sum += std::norm(a);
  }
  rec.norm = std::sqrt(sum);
  rec.x = c.mu * c.mu * sum;
  return rec;
}

double sample_x_direct(const ProtocolParams& p, Hypothesis hyp, Rng& rng) {
  p.validate();
  const protocol::ConditionalState c = protocol::conditional_params(p);
  if (c.mu == 0.0) {
    return 0.0;  // no signal-idler correlation, the conditioning is inert
  }
  specfn::GammaDensity law{static_cast<double>(p.m),
                           c.mu * c.mu * 2.0 * quadrature_variance(p, hyp)};
  return law.sample(rng);
}

TrialResult run_trials(const TrialConfig& cfg) {
  cfg.params.validate();
  if (cfg.trials < 1) {
    throw std::invalid_argument("trial count must be positive");
  }
  const ProtocolParams& p = cfg.params;
  const protocol::ConditionalState c = protocol::conditional_params(p);
  const bool oracle =
      std::holds_alternative<HelstromOracleReceiver>(cfg.receiver);

  TrialResult res;
  res.trials = cfg.trials;
  res.analytic_ref = std::visit(
      overloaded{[&](const PhotonCountReceiver& r) {
                   return analytic::photon_count_error(p, r.threshold);
                 },
                 [&](const HomodyneReceiver& r) {
                   return r.threshold
                              ? analytic::homodyne_error_fixed(p, *r.threshold)
                              : analytic::homodyne_error(p);
                 },
                 [&](const HelstromOracleReceiver&) {
                   return analytic::p_cd(p);
                 }},
      cfg.receiver);

  // Fixed-size chunks with per-trial streams: the partition never depends
  // on the thread count and the reduction below runs in chunk order, so
  // results are bit-identical for any scheduling.
  constexpr std::uint64_t kChunk = 1024;
  const std::uint64_t nchunks = (cfg.trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> chunk_errors(nchunks, 0);
  std::vector<double> chunk_score(oracle ? nchunks : 0, 0.0);
  std::vector<double> chunk_score_sq(oracle ? nchunks : 0, 0.0);

  const double s_absent = std::sqrt(2.0 * p.n_s + 1.0);
  const double s_present = std::sqrt(2.0 * c.e_therm + 1.0);

  std::atomic<std::uint64_t> next{0};
  std::mutex gate;
  std::exception_ptr failure;
  auto body = [&]() {
    for (;;) {
      const std::uint64_t j = next.fetch_add(1);
      if (j >= nchunks) {
        return;
      }
      try {
        const std::uint64_t lo = j * kChunk;
        const std::uint64_t hi = std::min(cfg.trials, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
          Rng meas(cfg.seed, 2 * i);
          const Hypothesis hyp = meas.uniform() < 0.5 ? Hypothesis::present
                                                      : Hypothesis::absent;
          double x;
          if (cfg.full_records) {
            x = sample_record(p, hyp, cfg.seed, 2 * i + 1).x;
          } else {
            Rng rec(cfg.seed, 2 * i + 1);
            x = sample_x_direct(p, hyp, rec);
          }
          if (oracle) {
            const double score = analytic::conditional_slice_error(p, x);
            chunk_score[j] += score;
            chunk_score_sq[j] += score * score;
            continue;
          }
          bool declare_present = false;
          if (const auto* counter =
                  std::get_if<PhotonCountReceiver>(&cfg.receiver)) {
            const std::uint64_t n =
                hyp == Hypothesis::absent
                    ? sample_thermal_count(p.n_s, meas)
                    : sample_present_count(x, c.e_therm, meas);
            declare_present = n > counter->threshold;
          } else {
            const auto& homodyne = std::get<HomodyneReceiver>(cfg.receiver);
            const double q = hyp == Hypothesis::absent
                                 ? meas.normal() * s_absent
                                 : 2.0 * std::sqrt(x) +
                                       meas.normal() * s_present;
            if (homodyne.threshold) {
              declare_present = q > *homodyne.threshold;
            } else {
              const analytic::DecisionInterval iv =
                  analytic::homodyne_decision_interval(p.n_s, c.e_therm, x);
              declare_present = q >= iv.lo && q <= iv.hi;
            }
          }
          if (declare_present != (hyp == Hypothesis::present)) {
            ++chunk_errors[j];
          }
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(gate);
        if (!failure) {
          failure = std::current_exception();
        }
        return;
      }
    }
  };

  int workers = cfg.threads > 0
                    ? cfg.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(nchunks)));
  if (workers == 1) {
    body();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back(body);
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  if (failure) {
    std::rethrow_exception(failure);
  }

  if (oracle) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t j = 0; j < nchunks; ++j) {
      sum += chunk_score[j];
      sum_sq += chunk_score_sq[j];
    }
    const double n = static_cast<double>(cfg.trials);
    res.empirical_error = sum / n;
    const double var =
        std::max(0.0, sum_sq / n - res.empirical_error * res.empirical_error);
    const double half = 1.959964 * std::sqrt(var / n);
    res.ci95_lo = std::max(0.0, res.empirical_error - half);
    res.ci95_hi = std::min(1.0, res.empirical_error + half);
    return res;
  }

  for (std::uint64_t j = 0; j < nchunks; ++j) {
    res.errors += chunk_errors[j];
  }
  res.empirical_error =
      static_cast<double>(res.errors) / static_cast<double>(cfg.trials);
  wilson_interval(res.errors, cfg.trials, &res.ci95_lo, &res.ci95_hi);
  return res;
}

double ks_distance(std::vector<double> samples,
                   const std::function<double(double)>& cdf) {
  if (samples.empty()) {
    throw std::invalid_argument("distance needs at least one sample");
  }
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
    d = std::max(d, f - static_cast<double>(i) / n);
  }
  return d;
}

void wilson_interval(std::uint64_t errors, std::uint64_t trials, double* lo,
                     double* hi) {
  if (trials == 0) {
    throw std::invalid_argument("trials must be positive");
  }
  if (lo == nullptr || hi == nullptr) {
    throw std::invalid_argument("interval outputs must be present");
  }
  if (errors > trials) {
    throw std::invalid_argument("errors cannot exceed trials");
  }
  constexpr double z = 1.959964;
  const double n = static_cast<double>(trials);
  const double phat = static_cast<double>(errors) / n;
  const double z2n = z * z / n;
  const double denom = 1.0 + z2n;
  const double center = (phat + 0.5 * z2n) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / n + 0.25 * z2n / n) / denom;
  *lo = std::max(0.0, center - half);
  *hi = std::min(1.0, center + half);
}

}  // namespace qicd::mc
