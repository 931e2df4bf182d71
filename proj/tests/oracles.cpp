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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace oracles {

double lambert_lower_bisect(double z) {
  auto g = [z](double w) { return w * std::exp(w) - z; };
  double hi = -1.0;
  double lo = -2.0;
  while (g(lo) < 0.0 && lo > -750.0) lo *= 2.0;
  for (int i = 0; i < 2000; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (g(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double simpson(const std::function<double(double)>& f, double lo, double hi,
               int n) {
  if (n % 2 != 0) throw std::invalid_argument("simpson: n must be even");
  double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) {
    s += f(lo + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return s * h / 3.0;
}

double laguerre_series(int n, double x) {
  double sum = 0.0;
  for (int k = 0; k <= n; ++k) {
    double lmag = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                  std::lgamma(n - k + 1.0) - std::lgamma(k + 1.0);
    double term;
    if (x == 0.0) {
      term = (k == 0) ? 1.0 : 0.0;
    } else {
      term = std::exp(lmag + k * std::log(std::abs(x)));
      if (x > 0.0 && k % 2 == 1) term = -term;
    }
    sum += term;
  }
  return sum;
}

namespace {
double logsumexp(const std::vector<double>& v) {
  if (v.empty()) return -std::numeric_limits<double>::infinity();
  double mx = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(mx)) return mx;
  double s = 0.0;
  for (double t : v) s += std::exp(t - mx);
  return mx + std::log(s);
}
}  // namespace

Eigen::MatrixXcd displaced_thermal_closed(std::complex<double> alpha,
                                          double occupancy, int cutoff) {
  double a = std::abs(alpha);
  std::complex<double> phase =
      (a > 0.0) ? alpha / a : std::complex<double>(1.0, 0.0);
  double le = (occupancy > 0.0) ? std::log(occupancy) : 0.0;
  double l1e = std::log1p(occupancy);
  double la = (a > 0.0) ? std::log(a) : 0.0;
  double lpref = -a * a / (occupancy + 1.0);
  Eigen::MatrixXcd rho(cutoff, cutoff);
  for (int m = 0; m < cutoff; ++m) {
    for (int n = 0; n <= m; ++n) {
      std::vector<double> terms;
      for (int k = 0; k <= n; ++k) {
        if (occupancy == 0.0 && k > 0) break;
        if (a == 0.0 && (m + n - 2 * k) != 0) continue;
        terms.push_back(0.5 * (std::lgamma(m + 1.0) + std::lgamma(n + 1.0)) -
                        std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0) -
                        std::lgamma(n - k + 1.0) + k * le +
                        (m + n - 2 * k) * la - (m + n - k) * l1e);
      }
      double mag = std::exp(lpref + logsumexp(terms) - l1e);
      std::complex<double> val =
          mag * std::pow(phase, static_cast<double>(m - n));
      rho(m, n) = val;
      rho(n, m) = std::conj(val);
    }
  }
  return rho;
}

double two_gaussian_error_dense(double mean1, double v0, double v1) {
  double sig = std::sqrt(std::max(v0, v1));
  double lo = std::min(0.0, mean1) - 14.0 * sig;
  double hi = std::max(0.0, mean1) + 14.0 * sig;
  const int n = 400000;
  double h = (hi - lo) / n;
  auto f0 = [&](double q) {
    return std::exp(-0.5 * q * q / v0) / std::sqrt(2.0 * M_PI * v0);
  };
  auto f1 = [&](double q) {
    double d = q - mean1;
    return std::exp(-0.5 * d * d / v1) / std::sqrt(2.0 * M_PI * v1);
  };
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    double q = lo + i * h;
    double w = (i == 0 || i == n) ? 0.5 : 1.0;
    s += w * std::min(f0(q), f1(q));
  }
  return 0.5 * s * h;
}

double coherent_pair_helstrom(std::complex<double> a0,
                              std::complex<double> a1) {
  double fid = std::exp(-std::norm(a0 - a1));
  return 0.5 * (1.0 - std::sqrt(1.0 - fid));
}

double ks_distance_grid(const std::vector<double>& samples,
                        const std::function<double(double)>& cdf) {
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  // The supremum of |F_n - F| is attained at a sample point, approached
  // from one side or the other; probing both sides of every point on a
  // counting basis is enough.
  for (size_t i = 0; i < sorted.size(); ++i) {
    double x = sorted[i];
    double below =
        std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    double at_or_below =
        std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
    double fx = cdf(x);
    worst = std::max(worst, std::abs(below / n - fx));
    worst = std::max(worst, std::abs(at_or_below / n - fx));
  }
  return worst;
}

}  // namespace oracles
