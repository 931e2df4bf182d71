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

#ifndef QICD_ERRORS_HPP
#define QICD_ERRORS_HPP

#include <stdexcept>

namespace qicd {

// An iterative numeric procedure failed to reach its accuracy target
// (cutoff escalation, quadrature stability, root refinement).
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Fock-space truncation cannot hold the requested trace budget.
class TruncationError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

}  // namespace qicd

#endif
