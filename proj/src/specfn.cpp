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

#include "qicd/specfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qicd/errors.hpp"

namespace qicd::specfn {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kInvE = 0.36787944117144232159552377016146087;  // 1/e
}  // namespace

double lambert_w_minus1(double z) {
  if (!(z < 0.0) || z < -kInvE) {
    throw std::domain_error("lambert_w_minus1: z must lie in [-1/e, 0)");
  }
  if (z == -kInvE) return -1.0;

  // g(w) = w e^w - z is negative at w = -1 and approaches -z > 0 as
  // w -> -infinity, so double the far edge until it brackets the root.
  auto g = [z](double w) { return w * std::exp(w) - z; };
  double hi = -1.0;
  double lo = -2.0;
  while (g(lo) < 0.0) {
    lo *= 2.0;
    if (lo < -750.0) break;  // w e^w underflows past here; bracket is moot
  }
  for (int i = 0; i < 200 && (hi - lo) > 1e-16 * (-lo); ++i) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) >= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  // Newton polish; the derivative (1+w)e^w vanishes at the branch point, so
  // fall back to the bracket midpoint whenever a step escapes it.
  double w = 0.5 * (lo + hi);
  for (int i = 0; i < 12; ++i) {
    double ew = std::exp(w);
    double f = w * ew - z;
    double df = (1.0 + w) * ew;
    double next = (df != 0.0) ? w - f / df : w;
    if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
    if (next == w) break;
    w = next;
    if (g(w) >= 0.0) {
      lo = w;
    } else {
      hi = w;
    }
  }
  if (std::abs(w * std::exp(w) - z) > 1e-12 * std::abs(z)) {
    throw NumericsError("lambert_w_minus1: residual target not reached");
  }
  return w;
}

double laguerre(int n, double x) {
  if (n < 0) throw std::domain_error("laguerre: order must be >= 0");
  if (n == 0) return 1.0;
  double lm = 1.0;
  double l = 1.0 - x;
  for (int k = 1; k < n; ++k) {
    double next = ((2.0 * k + 1.0 - x) * l - k * lm) / (k + 1.0);
    lm = l;
    l = next;
  }
  return l;
}

Quadrature gauss_legendre(int n, double lo, double hi) {
  if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
  if (!(hi > lo)) throw std::domain_error("gauss_legendre: empty interval");
  Quadrature q;
  q.x.resize(n);
  q.w.resize(n);
  double c = 0.5 * (hi + lo);
  double h = 0.5 * (hi - lo);
  int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev estimate of the i-th root, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    q.x[i] = c - h * x;
    q.x[n - 1 - i] = c + h * x;
    q.w[i] = h * w;
    q.w[n - 1 - i] = h * w;
  }
  return q;
}

void GammaDensity::validate() const {
  if (!(shape >= 1.0) || shape != std::floor(shape) || shape > 9e15) {
    throw std::domain_error("GammaDensity: shape must be a positive integer");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::domain_error("GammaDensity: scale must be positive and finite");
  }
}

double GammaDensity::log_pdf(double x) const {
  validate();
  if (!(x >= 0.0)) throw std::domain_error("GammaDensity: x must be >= 0");
  if (x == 0.0) {
    if (shape == 1.0) return -std::log(scale);
    return -std::numeric_limits<double>::infinity();
  }
  return (shape - 1.0) * std::log(x) - x / scale - shape * std::log(scale) -
         std::lgamma(shape);
}

double GammaDensity::pdf(double x) const { return std::exp(log_pdf(x)); }

double GammaDensity::cdf(double x) const {
  validate();
  if (!(x >= 0.0)) throw std::domain_error("GammaDensity: x must be >= 0");
  return gamma_p(shape, x / scale);
}

double GammaDensity::stddev() const {
  validate();
  return std::sqrt(shape) * scale;
}

double GammaDensity::sample(Rng& rng) const {
  validate();
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / (3.0 * std::sqrt(d));
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = rng.uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
      return d * v * scale;
    }
  }
}

double gamma_p(double a, double x) {
  if (!(a > 0.0)) throw std::domain_error("gamma_p: shape must be positive");
  if (!(x >= 0.0)) throw std::domain_error("gamma_p: x must be >= 0");
  if (x == 0.0) return 0.0;
  const double eps = 1e-15;
  const int max_iter = 100000;
  double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // Series representation.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < max_iter; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::abs(del) < std::abs(sum) * eps) {
        return sum * std::exp(-x + a * std::log(x) - lg);
      }
    }
    throw NumericsError("gamma_p: series did not converge");
  }
  // Continued fraction for the upper tail (modified Lentz).
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= max_iter; ++i) {
    double an = -static_cast<double>(i) * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < eps) {
      return 1.0 - h * std::exp(-x + a * std::log(x) - lg);
    }
  }
  throw NumericsError("gamma_p: continued fraction did not converge");
}

double gauss_tail(double z) { return 0.5 * std::erfc(z / 1.4142135623730951); }

}  // namespace qicd::specfn
