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

#include "qicd/protocol.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "qicd/fock.hpp"

using namespace qicd::protocol;

namespace {

ProtocolParams bright_background() {
  // n_s = 0.001, kappa = 0.01, n_b = 20: the main operating point.
  return {0.001, 0.01, 0.0, 20.0, 100000};
}

ProtocolParams mc_point() {
  return {0.1, 0.1, 0.0, 1.0, 100};
}

}  // namespace

TEST_SUITE("protocol") {

TEST_CASE("parameters validate") {
  CHECK_NOTHROW(bright_background().validate());
  ProtocolParams p = bright_background();
  p.n_s = -0.1;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = bright_background();
  p.kappa = 1.2;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p.kappa = -0.01;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = bright_background();
  p.n_b = -1.0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = bright_background();
  p.m = 0;
  CHECK_THROWS_AS(p.validate(), std::domain_error);
  p = bright_background();
  p.theta = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(p.validate(), std::domain_error);
}

TEST_CASE("conditional parameters at the frozen operating points") {
  auto c = conditional_params(bright_background());
  CHECK(c.mu == doctest::Approx(1.506598522530e-04).epsilon(1e-11));
  CHECK(c.xi == doctest::Approx(2.383332198413e-07).epsilon(1e-11));
  CHECK(c.e_therm == doctest::Approx(9.052376641725e-04).epsilon(1e-11));
  CHECK(c.displacement == std::complex<double>{});

  auto c2 = conditional_params(mc_point());
  CHECK(c2.mu == doctest::Approx(5.217954468508e-02).epsilon(1e-11));
  CHECK(c2.xi == doctest::Approx(2.736318407960e-03).epsilon(1e-11));
  CHECK(c2.e_therm == doctest::Approx(4.975124378109e-03).epsilon(1e-11));
}

TEST_CASE("xi ties to mu through the heterodyne variance") {
  for (auto p : {bright_background(), mc_point(),
                 ProtocolParams{0.05, 0.3, 0.4, 4.0, 1000}}) {
    auto c = conditional_params(p);
    double total_var = 2.0 * heterodyne_variance(p);
    CHECK(c.xi == doctest::Approx(0.5 * c.mu * c.mu * total_var)
                      .epsilon(1e-13));
  }
}

TEST_CASE("heterodyne variance at the frozen operating points") {
  CHECK(heterodyne_variance(bright_background()) ==
        doctest::Approx(10.500005).epsilon(1e-12));
  CHECK(heterodyne_variance(mc_point()) ==
        doctest::Approx(1.005).epsilon(1e-13));
}

TEST_CASE("combined displacement carries the record power and the phase") {
  auto c = conditional_params(mc_point());
  std::vector<std::complex<double>> alphas = {{3.0, 0.0}, {0.0, 4.0}};
  auto d0 = combine_displacement(c, alphas, 0.0);
  CHECK(d0.real() == doctest::Approx(5.0 * c.mu).epsilon(1e-13));
  CHECK(d0.imag() == doctest::Approx(0.0).epsilon(1e-15));

  double theta = 0.9;
  auto d1 = combine_displacement(c, alphas, theta);
  CHECK(std::abs(d1) == doctest::Approx(5.0 * c.mu).epsilon(1e-13));
  CHECK(std::arg(d1) == doctest::Approx(-theta).epsilon(1e-13));

  ConditionalState st = c;
  st.displacement = d1;
  CHECK(st.x() == doctest::Approx(25.0 * c.mu * c.mu).epsilon(1e-13));

  CHECK(combine_displacement(c, {}, 0.3) == std::complex<double>{});
}

TEST_CASE("fading spec validates") {
  FadingSpec f;
  f.kappa = {0.1, 0.2};
  f.weight = {0.5, 0.5};
  CHECK_NOTHROW(f.validate());
  f.weight = {0.6, 0.5};
  CHECK_THROWS_AS(f.validate(), std::domain_error);
  f.weight = {0.5};
  CHECK_THROWS_AS(f.validate(), std::domain_error);
  f.kappa = {0.1, -0.2};
  f.weight = {0.5, 0.5};
  CHECK_THROWS_AS(f.validate(), std::domain_error);
  f.kappa = {};
  f.weight = {};
  CHECK_THROWS_AS(f.validate(), std::domain_error);
}

TEST_CASE("single-branch fading reproduces the plain distribution") {
  auto p = mc_point();
  auto c = conditional_params(p);
  double x = 0.09;
  FadingSpec f;
  f.kappa = {p.kappa};
  f.weight = {1.0};
  auto mixed = fading_average_pmf(p, f, x, 20);
  auto plain = qicd::fock::photon_number_pmf(
      qicd::fock::StateSpec::displaced_thermal(std::sqrt(x), c.e_therm), 20);
  for (int k = 0; k < 20; ++k) {
    CHECK(mixed[k] == doctest::Approx(plain[k]).epsilon(1e-12));
  }
}

TEST_CASE("fading mixes branch distributions convexly") {
  auto p = mc_point();
  double x = 0.04;
  FadingSpec f;
  f.kappa = {0.05, 0.2};
  f.weight = {0.3, 0.7};
  auto mixed = fading_average_pmf(p, f, x, 24);

  auto ref = conditional_params(p);
  double total = 0.0;
  std::vector<double> manual(24, 0.0);
  for (size_t b = 0; b < f.kappa.size(); ++b) {
    ProtocolParams pb = p;
    pb.kappa = f.kappa[b];
    auto cb = conditional_params(pb);
    double xb = x * (cb.mu * cb.mu) / (ref.mu * ref.mu);
    auto pk = qicd::fock::photon_number_pmf(
        qicd::fock::StateSpec::displaced_thermal(std::sqrt(xb), cb.e_therm),
        24);
    for (int k = 0; k < 24; ++k) manual[k] += f.weight[b] * pk[k];
  }
  for (int k = 0; k < 24; ++k) {
    CHECK(mixed[k] == doctest::Approx(manual[k]).epsilon(1e-12));
    total += mixed[k];
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("fading rejects a zero-signal reference with a nonzero record") {
  ProtocolParams p = mc_point();
  p.kappa = 0.0;
  FadingSpec f;
  f.kappa = {0.1};
  f.weight = {1.0};
  CHECK_THROWS_AS((void)fading_average_pmf(p, f, 0.2, 10), std::domain_error);
}

}  // TEST_SUITE
