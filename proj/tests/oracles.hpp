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

#ifndef QICD_TESTS_ORACLES_HPP
#define QICD_TESTS_ORACLES_HPP

// Reference implementations that deliberately avoid the library's code
// paths: slower and simpler, used to cross-check the production routines.

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

// Pure bisection solve of w e^w = z on the lower branch, no Newton polish.
double lambert_lower_bisect(double z);

// Composite Simpson rule with n panels (n even).
double simpson(const std::function<double(double)>& f, double lo, double hi,
               int n);

// Laguerre polynomial from its explicit coefficient expansion
// sum_k binom(n, k) (-x)^k / k!, accurate for x <= 0 where all terms share
// one sign.
double laguerre_series(int n, double x);

// Density matrix of a displaced thermal state from the closed-form matrix
// elements, each entry summed in log space.
Eigen::MatrixXcd displaced_thermal_closed(std::complex<double> alpha,
                                          double occupancy, int cutoff);

// Error of the equal-prior optimal test between N(0, v0) and N(mean1, v1)
// by dense trapezoid integration of min(f0, f1) / 2.
double two_gaussian_error_dense(double mean1, double v0, double v1);

// Helstrom value for two pure coherent states from the fidelity formula.
double coherent_pair_helstrom(std::complex<double> a0, std::complex<double> a1);

// Empirical-vs-reference Kolmogorov distance evaluated by counting on a
// dense grid of probe points (independent of any sort-based shortcut).
double ks_distance_grid(const std::vector<double>& samples,
                        const std::function<double(double)>& cdf);

}  // namespace oracles

#endif  // QICD_TESTS_ORACLES_HPP
