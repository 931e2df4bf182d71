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

#include "qicd/source.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qicd::source {

void SourceSpec::validate() const {
  if (!std::isfinite(coupling.real()) || !std::isfinite(coupling.imag())) {
    throw std::domain_error("pump coupling must be finite");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::domain_error("pulse duration must be positive");
  }
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::domain_error("phase-matched bandwidth must be positive");
  }
  if (!(mismatch_coeff >= 0.0) || !std::isfinite(mismatch_coeff)) {
    throw std::domain_error("mismatch coefficient must be nonnegative");
  }
}

BogoliubovPair bogoliubov(const SourceSpec& s) {
  s.validate();
  BogoliubovPair pair;
  const double mag = std::abs(s.coupling);
  if (mag == 0.0) {
    return pair;  // identity transformation
  }
  pair.G = std::cosh(mag);
  pair.g = (s.coupling / mag) * std::sinh(mag);
  return pair;
}

ModeCount mode_count(const SourceSpec& s) {
  s.validate();
  // The tiny positive guard keeps exact integer time-bandwidth products
  // from flooring one pair short under roundoff.
  const double pairs = s.bandwidth * s.duration / (4.0 * M_PI);
  ModeCount out;
  out.l = static_cast<std::int64_t>(std::floor(pairs + 1e-9));
  out.modes = 2 * static_cast<std::uint64_t>(out.l) + 1;
  return out;
}

double bandwidth_from_mismatch(double mismatch_coeff, double budget) {
  if (!(mismatch_coeff >= 0.0) || !std::isfinite(mismatch_coeff)) {
    throw std::domain_error("mismatch coefficient must be nonnegative");
  }
  if (!(budget >= 0.0) || !std::isfinite(budget)) {
    throw std::domain_error("phase budget must be nonnegative");
  }
  if (budget == 0.0) {
    return 0.0;
  }
  if (mismatch_coeff == 0.0) {
    return std::numeric_limits<double>::infinity();  // unbounded band
  }
  return 2.0 * std::sqrt(budget / mismatch_coeff);
}

}  // namespace qicd::source
