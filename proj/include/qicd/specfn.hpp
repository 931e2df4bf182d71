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

#ifndef QICD_SPECFN_HPP
#define QICD_SPECFN_HPP

#include <vector>

#include "qicd/rng.hpp"

namespace qicd::specfn {

// Branch -1 of the Lambert W function: the solution w <= -1 of w e^w = z for
// z in [-1/e, 0). Bracketed bisection followed by a Newton polish; relative
// residual |w e^w - z| <= 1e-12 |z|. Throws std::domain_error outside the
// branch domain.
double lambert_w_minus1(double z);

// Laguerre polynomial L_n(x) by the three-term upward recurrence.
double laguerre(int n, double x);

// Gauss-Legendre rule with n nodes mapped onto [lo, hi].
struct Quadrature {
  std::vector<double> x;
  std::vector<double> w;
};
Quadrature gauss_legendre(int n, double lo, double hi);

// Gamma distribution with integer shape (stored as double so shapes beyond
// 1e7 remain exact) and positive scale. Densities are evaluated in log space
// to keep large shapes finite.
struct GammaDensity {
  double shape;
  double scale;

  double log_pdf(double x) const;
  double pdf(double x) const;
  double cdf(double x) const;  // regularized lower incomplete gamma
  double mean() const { return shape * scale; }
  double stddev() const;
  double sample(Rng& rng) const;  // Marsaglia-Tsang, valid for shape >= 1

  void validate() const;  // throws std::domain_error
};

// Regularized lower incomplete gamma P(a, x), series/continued-fraction form.
double gamma_p(double a, double x);

// Upper tail of the standard normal: P(Z > z) = erfc(z / sqrt 2) / 2.
double gauss_tail(double z);

}  // namespace qicd::specfn

#endif
