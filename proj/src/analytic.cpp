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

#include "qicd/analytic.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qicd/fock.hpp"
#include "qicd/specfn.hpp"

namespace qicd::analytic {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

using protocol::ConditionalState;
using protocol::ProtocolParams;

void check_settings(const QuadSettings& q) {
  if (q.nodes < 64) {
    throw std::domain_error("quadrature node budget must be at least 64");
  }
  if (q.cutoff_override < 0) {
    throw std::domain_error("cutoff override must be nonnegative");
  }
}

// Nodes and weights covering the gamma law of the record power x: one
// Gauss-Legendre panel on mean +- 12 sigma clamped at zero, plus log-spaced
// head panels below the clamp so the left tail is integrated rather than
// dropped once the bulk window detaches from the origin.
specfn::Quadrature record_window(double m, double xi, int nodes) {
  const double mean = 2.0 * xi * m;
  const double sigma = 2.0 * xi * std::sqrt(m);
  const double lo = std::max(0.0, mean - 12.0 * sigma);
  const double hi = mean + 12.0 * sigma;
  specfn::Quadrature quad = specfn::gauss_legendre(nodes, lo, hi);
  double edge = lo;
  for (int k = 0; k < 6 && edge > 0.0; ++k) {
    specfn::Quadrature head = specfn::gauss_legendre(8, edge / 10.0, edge);
    quad.x.insert(quad.x.end(), head.x.begin(), head.x.end());
    quad.w.insert(quad.w.end(), head.w.begin(), head.w.end());
    edge /= 10.0;
  }
  return quad;
}

specfn::GammaDensity record_law(const ProtocolParams& p,
                                const ConditionalState& c) {
  specfn::GammaDensity law{static_cast<double>(p.m), 2.0 * c.xi};
  law.validate();
  return law;
}

// Shared basis dimension for the conditional pair, sized by the largest
// displacement the quadrature will ever request.
int pair_cutoff(double n_s, double e, double x_max, const QuadSettings& q) {
  if (q.cutoff_override > 0) {
    return q.cutoff_override;
  }
  const int absent = fock::required_cutoff(fock::StateSpec::thermal(n_s));
  const int present = fock::required_cutoff(
      fock::StateSpec::displaced_thermal(std::sqrt(x_max), e));
  return std::max(absent, present);
}

// Record-averaged photon-number law of the conditional mode under
// target-present, alongside the geometric tail ratio under target-absent.
struct CountLaw {
  double ratio = 0.0;           // n_s / (n_s + 1)
  std::vector<double> present;  // averaged pmf, tail mass below 1e-10
};

CountLaw averaged_count_law(const ProtocolParams& p,
                            const ConditionalState& c,
                            const QuadSettings& q) {
  const specfn::Quadrature quad =
      record_window(static_cast<double>(p.m), c.xi, q.nodes);
  const double x_max = *std::max_element(quad.x.begin(), quad.x.end());
  const int count = fock::required_cutoff(
      fock::StateSpec::displaced_thermal(std::sqrt(x_max), c.e_therm), 1e-10);
  const specfn::GammaDensity law = record_law(p, c);

  CountLaw out;
  out.ratio = p.n_s / (1.0 + p.n_s);
  out.present.assign(static_cast<std::size_t>(count), 0.0);
  for (std::size_t i = 0; i < quad.x.size(); ++i) {
    const double density = law.pdf(quad.x[i]);
    if (density == 0.0) {
      continue;
    }
    const std::vector<double> pmf = fock::photon_number_pmf(
        fock::StateSpec::displaced_thermal(std::sqrt(quad.x[i]), c.e_therm),
        count);
    const double scale = quad.w[i] * density;
    for (std::size_t n = 0; n < out.present.size(); ++n) {
      out.present[n] += scale * pmf[n];
    }
  }
  return out;
}

double count_error_at(const CountLaw& law, std::uint64_t threshold) {
  // Declare present on n > threshold; the absent-side tail is geometric.
  const double false_alarm =
      std::pow(law.ratio, static_cast<double>(threshold) + 1.0);
  const std::uint64_t top = std::min<std::uint64_t>(
      threshold, static_cast<std::uint64_t>(law.present.size()) - 1);
  double miss = 0.0;
  for (std::uint64_t n = 0; n <= top; ++n) {
    miss += law.present[static_cast<std::size_t>(n)];
  }
  return 0.5 * false_alarm + 0.5 * miss;
}

}  // namespace

double conditional_slice_error(const ProtocolParams& p, double x,
                               const QuadSettings& q) {
  p.validate();
  check_settings(q);
  if (!(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error("record power must be finite and nonnegative");
  }
  const ConditionalState c = protocol::conditional_params(p);
  const int cutoff = pair_cutoff(p.n_s, c.e_therm, x, q);
  const fock::FockMatrix absent =
      fock::build_state(fock::StateSpec::thermal(p.n_s), cutoff);
  const fock::FockMatrix present = fock::build_state(
      fock::StateSpec::displaced_thermal(std::sqrt(x), c.e_therm), cutoff);
  return fock::helstrom(absent, present);
}

double p_cd(const ProtocolParams& p, const QuadSettings& q) {
  p.validate();
  check_settings(q);
  if (p.kappa == 0.0) {
    return 0.5;  // both hypotheses return pure background
  }
  const ConditionalState c = protocol::conditional_params(p);
  if (c.xi == 0.0) {
    return 0.5;  // an empty source leaves the conditional mode in vacuum
  }
  const specfn::Quadrature quad =
      record_window(static_cast<double>(p.m), c.xi, q.nodes);
  const double x_max = *std::max_element(quad.x.begin(), quad.x.end());
  const int cutoff = pair_cutoff(p.n_s, c.e_therm, x_max, q);
  const fock::FockMatrix absent =
      fock::build_state(fock::StateSpec::thermal(p.n_s), cutoff);
  const specfn::GammaDensity law = record_law(p, c);

  double acc = 0.0;
  for (std::size_t i = 0; i < quad.x.size(); ++i) {
    const double density = law.pdf(quad.x[i]);
    if (density == 0.0) {
      continue;
    }
    const fock::FockMatrix present = fock::build_state(
        fock::StateSpec::displaced_thermal(std::sqrt(quad.x[i]), c.e_therm),
        cutoff);
    acc += quad.w[i] * density * fock::helstrom(absent, present);
  }
  return acc;
}

NgBound ng_bound(const ProtocolParams& p) {
  p.validate();
  NgBound out;
  if (p.kappa == 0.0) {
    out.value = 0.25;
    return out;
  }
  const double reach = p.kappa / (p.n_b * (1.0 - p.kappa) + 1.0);
  if (reach >= 1.0) {
    out.beta = kInfinity;
    out.beta_infinite = true;
    out.value = p.n_s == 0.0 ? 0.25 : 0.0;
    return out;
  }
  out.beta = -std::log1p(-reach);
  out.value =
      0.25 * std::exp(-out.beta * static_cast<double>(p.m) * p.n_s);
  return out;
}

double p_ci(const ProtocolParams& p, const QuadSettings& q) {
  p.validate();
  check_settings(q);
  const double energy = static_cast<double>(p.m) * p.kappa * p.n_s;
  if (energy == 0.0) {
    return 0.5;
  }
  if (p.n_b == 0.0) {
    // Coherent state against vacuum: pure-pair closed form.
    return 0.5 * (1.0 - std::sqrt(-std::expm1(-energy)));
  }
  const fock::StateSpec present =
      fock::StateSpec::displaced_thermal(std::sqrt(energy), p.n_b);
  int cutoff = q.cutoff_override;
  if (cutoff <= 0) {
    cutoff = std::max(fock::required_cutoff(fock::StateSpec::thermal(p.n_b)),
                      fock::required_cutoff(present));
  }
  return fock::helstrom(
      fock::build_state(fock::StateSpec::thermal(p.n_b), cutoff),
      fock::build_state(present, cutoff));
}

double photon_count_error(const ProtocolParams& p, std::uint64_t threshold,
                          const QuadSettings& q) {
  p.validate();
  check_settings(q);
  if (p.kappa == 0.0) {
    return 0.5;
  }
  const ConditionalState c = protocol::conditional_params(p);
  if (c.xi == 0.0) {
    return 0.5;
  }
  return count_error_at(averaged_count_law(p, c, q), threshold);
}

CountEnvelope best_photon_count(const ProtocolParams& p,
                                const QuadSettings& q) {
  p.validate();
  check_settings(q);
  if (p.kappa == 0.0) {
    return {0.5, 0};
  }
  const ConditionalState c = protocol::conditional_params(p);
  if (c.xi == 0.0) {
    return {0.5, 0};
  }
  const CountLaw law = averaged_count_law(p, c, q);
  // Past the stored range the miss mass is within 1e-10 of one while the
  // false-alarm term keeps shrinking, so the optimum lies inside it.
  CountEnvelope best{kInfinity, 0};
  double miss = 0.0;
  for (std::size_t t = 0; t < law.present.size(); ++t) {
    miss += law.present[t];
    const double err =
        0.5 * std::pow(law.ratio, static_cast<double>(t) + 1.0) + 0.5 * miss;
    if (err < best.error) {
      best.error = err;
      best.threshold = static_cast<std::uint64_t>(t);
    }
  }
  return best;
}

ThresholdPlan optimal_threshold(const ProtocolParams& p,
                                const QuadSettings& q) {
  p.validate();
  check_settings(q);
  constexpr double kInvE = 0.36787944117144233;
  if (!(p.n_s > 0.0) || !(p.n_s < kInvE)) {
    throw std::domain_error(
        "threshold crossing is defined for brightness in (0, 1/e)");
  }
  ThresholdPlan plan;
  plan.epsilon = -specfn::lambert_w_minus1(-p.n_s / std::exp(1.0));
  const ConditionalState c = protocol::conditional_params(p);
  plan.n_opt_real =
      4.0 * c.xi * static_cast<double>(p.m) / plan.epsilon;
  plan.n_opt_int = static_cast<std::uint64_t>(std::floor(plan.n_opt_real));
  plan.m_star = c.xi > 0.0 ? plan.epsilon / (2.0 * c.xi) : kInfinity;
  const CountEnvelope env = best_photon_count(p, q);
  plan.best_int = env.threshold;
  plan.best_error = env.error;
  return plan;
}

DecisionInterval homodyne_decision_interval(double n_s, double e, double x) {
  if (!(n_s >= 0.0) || !std::isfinite(n_s) || !(e >= 0.0) ||
      !std::isfinite(e) || !(x >= 0.0) || !std::isfinite(x)) {
    throw std::domain_error(
        "occupancies and record power must be finite and nonnegative");
  }
  if (e > n_s) {
    throw std::domain_error(
        "present-side variance above the absent side: the declare-present "
        "region is not a single interval");
  }
  const DecisionInterval empty{kInfinity, -kInfinity};
  const double v0 = 2.0 * n_s + 1.0;
  const double v1 = 2.0 * e + 1.0;
  const double mean = 2.0 * std::sqrt(x);
  if (v0 == v1) {
    if (mean == 0.0) {
      return empty;  // identical densities, never declare present
    }
    return {0.5 * mean, kInfinity};  // linear log ratio, midpoint threshold
  }
  // log f1 - log f0 = a q^2 + b q + c with a < 0.
  const double a = 0.5 * (1.0 / v0 - 1.0 / v1);
  const double b = mean / v1;
  const double c = -0.5 * mean * mean / v1 - 0.5 * std::log(v1 / v0);
  const double disc = b * b - 4.0 * a * c;
  if (disc <= 0.0) {
    return empty;
  }
  const double shifted = -0.5 * (b + std::sqrt(disc));  // b >= 0 always
  const double r1 = shifted / a;
  const double r2 = c / shifted;
  return {std::min(r1, r2), std::max(r1, r2)};
}

double homodyne_slice_error(double n_s, double e, double x) {
  const DecisionInterval iv = homodyne_decision_interval(n_s, e, x);
  if (iv.lo > iv.hi) {
    return 0.5;
  }
  const double s0 = std::sqrt(2.0 * n_s + 1.0);
  const double s1 = std::sqrt(2.0 * e + 1.0);
  const double mean = 2.0 * std::sqrt(x);
  const double false_alarm =
      specfn::gauss_tail(iv.lo / s0) - specfn::gauss_tail(iv.hi / s0);
  const double detect = specfn::gauss_tail((iv.lo - mean) / s1) -
                        specfn::gauss_tail((iv.hi - mean) / s1);
  return 0.5 * false_alarm + 0.5 * (1.0 - detect);
}

double homodyne_error(const ProtocolParams& p, const QuadSettings& q) {
  p.validate();
  check_settings(q);
  if (p.kappa == 0.0) {
    return 0.5;
  }
  const ConditionalState c = protocol::conditional_params(p);
  if (c.xi == 0.0) {
    return 0.5;
  }
  const specfn::Quadrature quad =
      record_window(static_cast<double>(p.m), c.xi, q.nodes);
  const specfn::GammaDensity law = record_law(p, c);
  double acc = 0.0;
  for (std::size_t i = 0; i < quad.x.size(); ++i) {
    const double density = law.pdf(quad.x[i]);
    if (density == 0.0) {
      continue;
    }
    acc += quad.w[i] * density *
           homodyne_slice_error(p.n_s, c.e_therm, quad.x[i]);
  }
  return acc;
}

double homodyne_error_fixed(const ProtocolParams& p, double threshold,
                            const QuadSettings& q) {
  p.validate();
  check_settings(q);
  if (!std::isfinite(threshold)) {
    throw std::domain_error("quadrature threshold must be finite");
  }
  if (p.kappa == 0.0) {
    return 0.5;
  }
  const ConditionalState c = protocol::conditional_params(p);
  const double s0 = std::sqrt(2.0 * p.n_s + 1.0);
  const double s1 = std::sqrt(2.0 * c.e_therm + 1.0);
  const double false_alarm = specfn::gauss_tail(threshold / s0);
  if (c.xi == 0.0) {
    return 0.5 * false_alarm +
           0.5 * (1.0 - specfn::gauss_tail(threshold / s1));
  }
  const specfn::Quadrature quad =
      record_window(static_cast<double>(p.m), c.xi, q.nodes);
  const specfn::GammaDensity law = record_law(p, c);
  double miss = 0.0;
  for (std::size_t i = 0; i < quad.x.size(); ++i) {
    const double density = law.pdf(quad.x[i]);
    if (density == 0.0) {
      continue;
    }
    const double mean = 2.0 * std::sqrt(quad.x[i]);
    miss += quad.w[i] * density *
            (1.0 - specfn::gauss_tail((threshold - mean) / s1));
  }
  return 0.5 * false_alarm + 0.5 * miss;
}

std::vector<std::uint64_t> Grid::points() const {
  if (!(m_min >= 1.0) || !std::isfinite(m_min) || !std::isfinite(m_max) ||
      !(m_min < m_max)) {
    throw std::domain_error("mode grid needs 1 <= m_min < m_max");
  }
  if (points_per_decade < 1) {
    throw std::domain_error("points_per_decade must be positive");
  }
  const double lo = std::log10(m_min);
  const double hi = std::log10(m_max);
  const int count = std::max(
      2, static_cast<int>(std::ceil((hi - lo) * points_per_decade)) + 1);
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double t = lo + (hi - lo) * i / (count - 1);
    out.push_back(static_cast<std::uint64_t>(std::llround(std::pow(10.0, t))));
  }
  out.front() = static_cast<std::uint64_t>(std::llround(m_min));
  out.back() = static_cast<std::uint64_t>(std::llround(m_max));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> error_exponents(const std::vector<std::uint64_t>& m,
                                    const std::vector<double>& p) {
  if (m.size() != p.size()) {
    throw std::invalid_argument("grid and value lengths differ");
  }
  if (m.size() < 3) {
    throw std::invalid_argument("exponents need at least three grid points");
  }
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!(p[i] > 0.0)) {
      throw std::invalid_argument("error probabilities must be positive");
    }
    if (i > 0 && m[i] <= m[i - 1]) {
      throw std::invalid_argument("mode grid must be strictly increasing");
    }
  }
  const std::size_t n = m.size();
  std::vector<double> r(n);
  auto slope = [&](std::size_t lo, std::size_t hi) {
    return -(std::log(p[hi]) - std::log(p[lo])) /
           (static_cast<double>(m[hi]) - static_cast<double>(m[lo]));
  };
  r.front() = slope(0, 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    r[i] = slope(i - 1, i + 1);
  }
  r.back() = slope(n - 2, n - 1);
  return r;
}

double fitted_exponent(const std::vector<std::uint64_t>& m,
                       const std::vector<double>& p, double m_lo,
                       double m_hi) {
  if (m.size() != p.size()) {
    throw std::invalid_argument("grid and value lengths differ");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const double x = static_cast<double>(m[i]);
    if (x < m_lo || x > m_hi) {
      continue;
    }
    if (!(p[i] > 0.0)) {
      throw std::invalid_argument("error probabilities must be positive");
    }
    xs.push_back(x);
    ys.push_back(std::log(p[i]));
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("fit window holds fewer than two grid points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return -sxy / sxx;
}

double r_ci_exponent(const ProtocolParams& p) {
  p.validate();
  if (p.n_b == 0.0) {
    throw std::domain_error(
        "classical exponent is defined for nonzero background");
  }
  return p.kappa * p.n_s / (4.0 * p.n_b);
}

ErrorCurve compute_error_curve(const ProtocolParams& p, const Grid& grid,
                               const QuadSettings& q, int threads) {
  p.validate();
  check_settings(q);
  ErrorCurve curve;
  curve.m_grid = grid.points();
  const std::size_t n = curve.m_grid.size();
  curve.p_cd.resize(n);
  curve.p_ng.resize(n);
  curve.p_ci.resize(n);
  curve.p_count.resize(n);
  curve.count_threshold.resize(n);

  int workers = threads > 0
                    ? threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));

  std::atomic<std::size_t> next{0};
  std::mutex gate;
  std::exception_ptr failure;
  auto body = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        ProtocolParams point = p;
        point.m = curve.m_grid[i];
        curve.p_cd[i] = p_cd(point, q);
        curve.p_ng[i] = ng_bound(point).value;
        curve.p_ci[i] = p_ci(point, q);
        const CountEnvelope env = best_photon_count(point, q);
        curve.p_count[i] = env.error;
        curve.count_threshold[i] = env.threshold;
      } catch (...) {
        const std::lock_guard<std::mutex> lock(gate);
        if (!failure) {
          failure = std::current_exception();
        }
        return;
      }
    }
  };
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

  curve.r_cd = error_exponents(curve.m_grid, curve.p_count);
  curve.r_ci.assign(n, r_ci_exponent(p));
  curve.ratio_db.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    curve.ratio_db[i] = 10.0 * std::log10(curve.r_cd[i] / curve.r_ci[i]);
  }
  return curve;
}

}  // namespace qicd::analytic
