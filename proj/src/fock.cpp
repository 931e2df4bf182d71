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

#include "qicd/fock.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qicd/errors.hpp"

namespace qicd::fock {

namespace {

// Basis padding used while conjugating with the displacement matrix, so the
// truncated result does not pick up edge artifacts.
constexpr int kConjugationPad = 10;

bool finite(std::complex<double> z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Eigen::VectorXd thermal_diagonal(double occ, int dim) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(dim);
  if (occ == 0.0) {
    d(0) = 1.0;
    return d;
  }
  double lr = std::log(occ / (occ + 1.0));
  for (int k = 0; k < dim; ++k) {
    d(k) = std::exp(k * lr - std::log1p(occ));
  }
  return d;
}

void check_deficit(const FockMatrix& rho, const StateSpec& spec) {
  double deficit = 1.0 - rho.trace();
  if (deficit > tol_trunc) {
    std::ostringstream os;
    os << "build_state: dimension " << rho.cutoff << " keeps only "
       << rho.trace() << " of the trace (displacement "
       << std::abs(spec.displacement) << ", occupancy " << spec.occupancy
       << ")";
    throw TruncationError(os.str());
  }
}

}  // namespace

StateSpec StateSpec::thermal(double occupancy) {
  return {StateKind::thermal, {0.0, 0.0}, occupancy};
}

StateSpec StateSpec::coherent(std::complex<double> displacement) {
  return {StateKind::coherent, displacement, 0.0};
}

StateSpec StateSpec::displaced_thermal(std::complex<double> displacement,
                                       double occupancy) {
  return {StateKind::displaced_thermal, displacement, occupancy};
}

void StateSpec::validate() const {
  if (!(occupancy >= 0.0) || !std::isfinite(occupancy)) {
    throw std::domain_error("StateSpec: occupancy must be finite and >= 0");
  }
  if (!finite(displacement)) {
    throw std::domain_error("StateSpec: displacement must be finite");
  }
  if (kind == StateKind::thermal && displacement != std::complex<double>{}) {
    throw std::domain_error("StateSpec: thermal states carry no displacement");
  }
  if (kind == StateKind::coherent && occupancy != 0.0) {
    throw std::domain_error("StateSpec: coherent states carry no occupancy");
  }
}

int choose_cutoff(std::complex<double> displacement, double occupancy) {
  double load = std::norm(displacement) + occupancy;
  return static_cast<int>(std::ceil(load + 10.0 * std::sqrt(load) + 20.0));
}

DisplacementFactory::DisplacementFactory(int dim) : dim_(dim) {
  if (dim < 1) throw std::domain_error("DisplacementFactory: dim must be >= 1");
  // i (a^dag - a) is Hermitian with imaginary off-diagonals.
  Eigen::MatrixXcd y = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) {
    double s = std::sqrt(n + 1.0);
    y(n + 1, n) = std::complex<double>(0.0, s);
    y(n, n + 1) = std::complex<double>(0.0, -s);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(y);
  if (es.info() != Eigen::Success) {
    throw NumericsError("DisplacementFactory: eigensolve failed");
  }
  vectors_ = es.eigenvectors();
  phases_ = es.eigenvalues();
}

Eigen::MatrixXcd DisplacementFactory::matrix(std::complex<double> d) const {
  double mag = std::abs(d);
  if (mag == 0.0) return Eigen::MatrixXcd::Identity(dim_, dim_);
  // exp(|d| (a^dag - a)) = V exp(-i |d| Lambda) V^dag, then a number-basis
  // phase rotation recovers the complex amplitude.
  Eigen::VectorXcd ph(dim_);
  for (int k = 0; k < dim_; ++k) {
    ph(k) = std::polar(1.0, -mag * phases_(k));
  }
  Eigen::MatrixXcd real_disp =
      vectors_ * ph.asDiagonal() * vectors_.adjoint();
  if (d.imag() == 0.0 && d.real() > 0.0) return real_disp;
  double phi = std::arg(d);
  Eigen::VectorXcd rot(dim_);
  for (int n = 0; n < dim_; ++n) rot(n) = std::polar(1.0, n * phi);
  return rot.asDiagonal() * real_disp * rot.conjugate().asDiagonal();
}

FockMatrix build_state(const StateSpec& spec, int cutoff) {
  spec.validate();
  if (cutoff < 0) throw std::domain_error("build_state: negative dimension");
  if (cutoff == 0) cutoff = required_cutoff(spec);

  FockMatrix out;
  out.cutoff = cutoff;
  if (std::abs(spec.displacement) == 0.0) {
    out.m = thermal_diagonal(spec.occupancy, cutoff).cast<std::complex<double>>()
                .asDiagonal();
    check_deficit(out, spec);
    return out;
  }

  int padded = cutoff + kConjugationPad;
  DisplacementFactory fac(padded);
  Eigen::MatrixXcd disp = fac.matrix(spec.displacement);
  Eigen::VectorXd th = thermal_diagonal(spec.occupancy, padded);
  Eigen::MatrixXcd rho =
      disp * th.cast<std::complex<double>>().asDiagonal() * disp.adjoint();
  out.m = rho.topLeftCorner(cutoff, cutoff);
  out.m = 0.5 * (out.m + out.m.adjoint()).eval();
  check_deficit(out, spec);
  return out;
}

double trace_norm_distance(const FockMatrix& a, const FockMatrix& b) {
  if (a.cutoff != b.cutoff || a.m.rows() != b.m.rows()) {
    throw std::invalid_argument("trace_norm_distance: dimension mismatch");
  }
  Eigen::MatrixXcd delta = a.m - b.m;
  double scale = delta.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double imag_max = delta.imag().cwiseAbs().maxCoeff();
  if (imag_max <= 1e-13 * scale) {
    // Real symmetric fast path; the common case because every state in the
    // protocol can be rotated to a real displacement.
    Eigen::MatrixXd dr = delta.real();
    dr = 0.5 * (dr + dr.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dr,
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) {
      throw NumericsError("trace_norm_distance: eigensolve failed");
    }
    return es.eigenvalues().cwiseAbs().sum();
  }
  Eigen::MatrixXcd dh = 0.5 * (delta + delta.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dh,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericsError("trace_norm_distance: eigensolve failed");
  }
  return es.eigenvalues().cwiseAbs().sum();
}

double helstrom(const FockMatrix& a, const FockMatrix& b) {
  return 0.5 * (1.0 - 0.5 * trace_norm_distance(a, b));
}

FockMatrix dephase(const FockMatrix& a) {
  FockMatrix out;
  out.cutoff = a.cutoff;
  out.m = Eigen::MatrixXcd(a.m.diagonal().asDiagonal());
  return out;
}

namespace {

// Walks the photon-number probabilities of a displaced thermal state with a
// scaled three-term recurrence whose iterates stay bounded by exp(c); a
// power-of-ten shift keeps even that in range.
class PmfWalker {
 public:
  explicit PmfWalker(const StateSpec& spec) {
    double e = spec.occupancy;
    c_ = std::norm(spec.displacement) / (1.0 + e);
    lam_ = e / (1.0 + e);
    cy_ = c_ / (1.0 + e);
    base_ = -c_ - std::log1p(e);
    prev_ = 0.0;
    cur_ = 1.0;  // S_0
    k_ = 0;
  }

  // Probability of the current photon number, then advance.
  double next() {
    double p = std::max(0.0, cur_ * std::exp(base_ + shift_));
    double nxt;
    if (k_ == 0) {
      nxt = lam_ + cy_;
    } else {
      nxt = ((lam_ * (2.0 * k_ + 1.0) + cy_) * cur_ -
             k_ * lam_ * lam_ * prev_) /
            (k_ + 1.0);
    }
    prev_ = cur_;
    cur_ = nxt;
    ++k_;
    if (std::abs(cur_) > 1e280) {
      cur_ *= 1e-280;
      prev_ *= 1e-280;
      shift_ += 280.0 * std::log(10.0);
    }
    return p;
  }

 private:
  double c_, lam_, cy_, base_;
  double prev_, cur_, shift_ = 0.0;
  long k_;
};

}  // namespace

std::vector<double> photon_number_pmf(const StateSpec& spec, int count) {
  spec.validate();
  if (count < 1) throw std::domain_error("photon_number_pmf: count < 1");
  PmfWalker walker(spec);
  std::vector<double> out(count);
  for (int n = 0; n < count; ++n) out[n] = walker.next();
  return out;
}

int required_cutoff(const StateSpec& spec, double tol) {
  spec.validate();
  if (!(tol > 0.0 && tol < 1.0)) {
    throw std::domain_error("required_cutoff: tol must be in (0, 1)");
  }
  PmfWalker walker(spec);
  double cum = 0.0;
  int n = 0;
  constexpr int kScanLimit = 4000000;
  while (cum < 1.0 - tol) {
    cum += walker.next();
    ++n;
    if (n > kScanLimit) {
      throw NumericsError("required_cutoff: tail scan exceeded its cap");
    }
  }
  return std::max(n, choose_cutoff(spec.displacement, spec.occupancy));
}

}  // namespace qicd::fock
