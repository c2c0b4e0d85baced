#pragma once

// Operator interval {Z : L <= Z <= U} in the Loewner order, the g-convex
// constraint set of the solvers, plus the feasibility certificate used
// throughout the test suites.

#include <sstream>
#include <stdexcept>

#include "spdfw/matrix.hpp"

namespace spdfw {

// Relative eigenvalue tolerance of feasibility_check.
inline constexpr double kFeasibilityTolFactor = 1e-9;
// Gap eigenvalues below this (relative to ||U||) are treated as exactly zero.
inline constexpr double kDegenerateTolFactor = 1e-12;

class OperatorInterval {
 public:
  OperatorInterval(SpdMatrix lower, SpdMatrix upper)
      : lower_(std::move(lower)), upper_(std::move(upper)) {
    detail::require_same_dim(lower_.dim(), upper_.dim(), "OperatorInterval");
    const EigDecomposition gap = eig_sym(upper_.mat() - lower_.mat());
    upper_norm_ = eig_sym(upper_.mat()).eigenvalues.maxCoeff();
    const double lambda_min = gap.eigenvalues.minCoeff();
    if (lambda_min < -kPdTolFactor * upper_norm_) {
      std::ostringstream msg;
      msg << "OperatorInterval: U - L is not positive semidefinite "
          << "(min eigenvalue " << lambda_min << ")";
      throw std::invalid_argument(msg.str());
    }
    // Hermitian square root of U - L with tiny/negative eigenvalues clamped
    // to zero, so degenerate directions never produce NaNs downstream.
    const double clamp = kDegenerateTolFactor * upper_norm_;
    Vector clamped = gap.eigenvalues;
    for (Eigen::Index i = 0; i < clamped.size(); ++i) {
      clamped[i] = clamped[i] > clamp ? clamped[i] : 0.0;
    }
    gap_eigenvalues_ = clamped;
    gap_eigenvectors_ = gap.eigenvectors;
    gap_sqrt_ = gap.eigenvectors * clamped.cwiseSqrt().asDiagonal() *
                gap.eigenvectors.transpose();
    gap_sqrt_ = 0.5 * (gap_sqrt_ + gap_sqrt_.transpose());
    degenerate_ = gap_eigenvalues_.maxCoeff() <= 0.0;
  }

  const SpdMatrix& lower() const noexcept { return lower_; }
  const SpdMatrix& upper() const noexcept { return upper_; }
  Eigen::Index dim() const noexcept { return lower_.dim(); }

  // Spectral norm of U; the scale behind all interval tolerances.
  double upper_norm() const noexcept { return upper_norm_; }
  // True when U - L vanishes up to the degeneracy tolerance.
  bool degenerate() const noexcept { return degenerate_; }
  // Clamped eigenvalues of U - L, descending.
  const Vector& gap_eigenvalues() const noexcept { return gap_eigenvalues_; }
  const Matrix& gap_eigenvectors() const noexcept { return gap_eigenvectors_; }
  // Hermitian square root (U - L)^{1/2} with clamped spectrum.
  const Matrix& gap_sqrt() const noexcept { return gap_sqrt_; }

 private:
  SpdMatrix lower_;
  SpdMatrix upper_;
  double upper_norm_ = 0.0;
  Vector gap_eigenvalues_;
  Matrix gap_eigenvectors_;
  Matrix gap_sqrt_;
  bool degenerate_ = false;
};

struct FeasibilityReport {
  bool feasible = false;
  double lower_margin = 0.0;  // min eig(Z - L)
  double upper_margin = 0.0;  // min eig(U - Z)
  double tolerance = 0.0;
};

inline FeasibilityReport feasibility_check(const SpdMatrix& z,
                                           const OperatorInterval& interval) {
  detail::require_same_dim(z.dim(), interval.dim(), "feasibility_check");
  FeasibilityReport report;
  report.tolerance = kFeasibilityTolFactor * interval.upper_norm();
  report.lower_margin =
      eig_sym(z.mat() - interval.lower().mat()).eigenvalues.minCoeff();
  report.upper_margin =
      eig_sym(interval.upper().mat() - z.mat()).eigenvalues.minCoeff();
  report.feasible = report.lower_margin >= -report.tolerance &&
                    report.upper_margin >= -report.tolerance;
  return report;
}

}  // namespace spdfw
