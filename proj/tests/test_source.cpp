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

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "doctest.h"
#include "qicd/protocol.hpp"
#include "qicd/source.hpp"

using namespace qicd::source;

namespace {

SourceSpec valid_spec(std::complex<double> coupling) {
  SourceSpec s;
  s.coupling = coupling;
  s.duration = 1e-6;
  s.bandwidth = 2.0 * M_PI * 1e11;
  s.mismatch_coeff = 4e-25;
  return s;
}

// Truncated series for sinh on small arguments, an independent check of the
// library call used in production.
double sinh_series(double x) {
  double term = x;
  double acc = 0.0;
  for (int k = 0; k < 12; ++k) {
    acc += term;
    term *= x * x / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return acc;
}

}  // namespace

TEST_SUITE("source") {

TEST_CASE("no coupling is the identity transformation") {
  auto pair = bogoliubov(valid_spec(0.0));
  CHECK(pair.G == 1.0);
  CHECK(pair.g == std::complex<double>(0.0, 0.0));
  CHECK(pair.n_s() == 0.0);
}

TEST_CASE("weak coupling brightness matches the series expansion") {
  auto pair = bogoliubov(valid_spec(0.0316228));
  double expect = sinh_series(0.0316228);
  CHECK(pair.n_s() == doctest::Approx(expect * expect).epsilon(1e-12));
  CHECK(pair.n_s() == doctest::Approx(1.00033e-3).epsilon(1e-4));
}

TEST_CASE("the transformation is symplectic for any coupling") {
  const std::complex<double> probes[] = {
      {0.0316228, 0.0}, {1.2, 0.9}, {3.0, 0.0}, {1e-8, 0.0}, {0.0, 0.5}};
  for (auto z : probes) {
    auto pair = bogoliubov(valid_spec(z));
    CHECK(pair.G * pair.G - std::norm(pair.g) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pair.G >= 1.0);
  }
}

TEST_CASE("the pump phase is carried onto the squeezing coefficient") {
  std::complex<double> z = std::polar(0.8, 1.1);
  auto pair = bogoliubov(valid_spec(z));
  CHECK(std::arg(pair.g) == doctest::Approx(1.1).epsilon(1e-12));
  CHECK(std::abs(pair.g) == doctest::Approx(std::sinh(0.8)).epsilon(1e-12));
}

TEST_CASE("a source-specified brightness feeds the conversion unchanged") {
  double n_s = 0.001;
  auto pair = bogoliubov(valid_spec(std::asinh(std::sqrt(n_s))));
  CHECK(pair.n_s() == doctest::Approx(n_s).epsilon(1e-12));

  qicd::protocol::ProtocolParams direct{n_s, 0.01, 0.0, 20.0, 100000};
  qicd::protocol::ProtocolParams derived = direct;
  derived.n_s = pair.n_s();
  CHECK(qicd::protocol::conditional_params(derived).mu ==
        doctest::Approx(qicd::protocol::conditional_params(direct).mu)
            .epsilon(1e-12));
}

TEST_CASE("mode count follows the time-bandwidth product") {
  SourceSpec s = valid_spec(0.1);

  s.duration = 1.0;
  s.bandwidth = 4.0 * M_PI;
  auto mc = mode_count(s);
  CHECK(mc.l == 1);
  CHECK(mc.modes == 3);

  s.bandwidth = 4.0 * M_PI * 7.4;
  mc = mode_count(s);
  CHECK(mc.l == 7);
  CHECK(mc.modes == 15);

  s.duration = 1e-6;
  s.bandwidth = 2.0 * M_PI * 1e11;
  mc = mode_count(s);
  CHECK(mc.l == 50000);
  CHECK(mc.modes == 100001);
}

TEST_CASE("a band too narrow for one pair degrades to a single mode") {
  SourceSpec s = valid_spec(0.1);
  s.duration = 1.0;
  s.bandwidth = M_PI;  // product one quarter of the pair spacing
  auto mc = mode_count(s);
  CHECK(mc.l == 0);
  CHECK(mc.modes == 1);
}

TEST_CASE("mode count never decreases with bandwidth or duration") {
  SourceSpec s = valid_spec(0.1);
  std::uint64_t prev = 0;
  for (double bw = 1.0; bw < 1e3; bw *= 1.7) {
    s.duration = 1.0;
    s.bandwidth = bw;
    auto mc = mode_count(s);
    CHECK(mc.modes >= prev);
    prev = mc.modes;
  }
  prev = 0;
  for (double t = 1e-2; t < 10.0; t *= 1.9) {
    s.duration = t;
    s.bandwidth = 50.0;
    auto mc = mode_count(s);
    CHECK(mc.modes >= prev);
    prev = mc.modes;
  }
}

TEST_CASE("mismatch budget sets the usable band") {
  CHECK(bandwidth_from_mismatch(4e-25, 0.01) ==
        doctest::Approx(2.0 * std::sqrt(2.5e22)).epsilon(1e-12));
  // Square-root law: four times the budget doubles the band.
  double base = bandwidth_from_mismatch(4e-25, 0.01);
  CHECK(bandwidth_from_mismatch(4e-25, 0.04) ==
        doctest::Approx(2.0 * base).epsilon(1e-12));
  CHECK(bandwidth_from_mismatch(4e-25, 0.0) == 0.0);
  // A dispersionless medium supports any band.
  CHECK(std::isinf(bandwidth_from_mismatch(0.0, 0.01)));
}

TEST_CASE("mismatch arguments are validated") {
  CHECK_THROWS_AS((void)bandwidth_from_mismatch(-1e-25, 0.01),
                  std::domain_error);
  CHECK_THROWS_AS((void)bandwidth_from_mismatch(4e-25, -0.01),
                  std::domain_error);
}

TEST_CASE("source parameters are validated") {
  SourceSpec s = valid_spec(0.1);
  s.duration = 0.0;
  CHECK_THROWS_AS((void)bogoliubov(s), std::domain_error);
  s = valid_spec(0.1);
  s.bandwidth = -1.0;
  CHECK_THROWS_AS((void)mode_count(s), std::domain_error);
  s = valid_spec(0.1);
  s.mismatch_coeff = -1.0;
  CHECK_THROWS_AS((void)bogoliubov(s), std::domain_error);
  s = valid_spec({std::numeric_limits<double>::quiet_NaN(), 0.0});
  CHECK_THROWS_AS((void)bogoliubov(s), std::domain_error);
}

}  // TEST_SUITE
