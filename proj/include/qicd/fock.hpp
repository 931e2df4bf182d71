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

#ifndef QICD_FOCK_HPP
#define QICD_FOCK_HPP

/// Truncated number-basis representations of single-mode Gaussian states and
/// the distinguishability measures built on them.
///
/// All matrices live in a finite photon-number basis {|0>, ..., |cutoff-1>}.
/// Builders verify that the truncated state retains all but `tol_trunc` of
/// its trace and throw TruncationError otherwise, so downstream trace-norm
/// and Helstrom values inherit that accuracy without further checks.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace qicd::fock {

/// Trace mass a truncated state is allowed to lose.
inline constexpr double tol_trunc = 1e-8;

enum class StateKind {
  thermal,           // occupancy only
  coherent,          // displacement only
  displaced_thermal  // displaced thermal background
};

/// Parameters of a single-mode state. `displacement` is the coherent
/// amplitude (complex), `occupancy` the mean thermal photon number.
struct StateSpec {
  StateKind kind = StateKind::thermal;
  std::complex<double> displacement{0.0, 0.0};
  double occupancy = 0.0;

  static StateSpec thermal(double occupancy);
  static StateSpec coherent(std::complex<double> displacement);
  static StateSpec displaced_thermal(std::complex<double> displacement,
                                     double occupancy);

  void validate() const;
};

/// Density matrix in the truncated number basis.
struct FockMatrix {
  int cutoff = 0;          // basis dimension
  Eigen::MatrixXcd m;      // cutoff x cutoff, Hermitian for valid states

  double trace() const { return m.trace().real(); }
};

/// Heuristic basis dimension for a displaced thermal state; generous for
/// coherent-dominated states but can undershoot for thermal-heavy ones,
/// which is why required_cutoff exists.
int choose_cutoff(std::complex<double> displacement, double occupancy);

/// Spectral factorization of the displacement generator at a fixed
/// dimension. One factorization serves every displacement amplitude at
/// that dimension, which matters when sweeping the record power.
class DisplacementFactory {
 public:
  explicit DisplacementFactory(int dim);
  int dim() const { return dim_; }

  /// Truncated matrix of exp(d a^dag - conj(d) a).
  Eigen::MatrixXcd matrix(std::complex<double> d) const;

 private:
  int dim_;
  Eigen::MatrixXcd vectors_;  // eigenvectors of i (a^dag - a)
  Eigen::VectorXd phases_;    // its eigenvalues
};

/// Smallest dimension whose photon-number tail mass is below `tol`,
/// never less than choose_cutoff. Uses the closed-form number
/// distribution, so it is cheap even for dimensions in the thousands.
int required_cutoff(const StateSpec& spec, double tol = tol_trunc);

/// Builds the density matrix of `spec` at dimension `cutoff` (0 means
/// required_cutoff(spec)). Throws TruncationError if the result keeps less
/// than 1 - tol_trunc of the trace.
FockMatrix build_state(const StateSpec& spec, int cutoff = 0);

/// Trace norm ||a - b||_1 of the difference of two equally sized states.
double trace_norm_distance(const FockMatrix& a, const FockMatrix& b);

/// Minimum error probability for equal priors:
///   1/2 (1 - 1/2 ||a - b||_1).
double helstrom(const FockMatrix& a, const FockMatrix& b);

/// Removes all off-diagonal coherences (full phase noise).
FockMatrix dephase(const FockMatrix& a);

/// First `count` photon-number probabilities of `spec`, evaluated by a
/// stable scaled recurrence (no matrix is formed). Works for any mix of
/// displacement and occupancy, including either being zero.
std::vector<double> photon_number_pmf(const StateSpec& spec, int count);

}  // namespace qicd::fock

#endif  // QICD_FOCK_HPP
