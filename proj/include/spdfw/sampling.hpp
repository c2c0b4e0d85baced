#pragma once

// Seeded random generators for matrices and feasible points. Every function
// takes the engine by reference so callers control determinism.

#include <cmath>
#include <random>

#include "spdfw/interval.hpp"
#include "spdfw/matrix.hpp"

namespace spdfw {

using Rng = std::mt19937_64;

inline Matrix gaussian_matrix(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = normal(rng);
  }
  return m;
}

inline SymMatrix random_sym(Eigen::Index dim, Rng& rng) {
  return symmetrize(gaussian_matrix(dim, rng));
}

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the sign
// of diag(R) fixed to keep the distribution uniform.
inline Matrix haar_orthogonal(Eigen::Index dim, Rng& rng) {
  const Matrix g = gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

// Random SPD matrix Q diag(lambda) Q^T with log-uniform spectrum in
// [1, condition_number].
inline SpdMatrix random_spd(Eigen::Index dim, double condition_number,
                            Rng& rng) {
  if (!(condition_number >= 1.0)) {
    throw std::invalid_argument("random_spd: condition number must be >= 1");
  }
  const Matrix q = haar_orthogonal(dim, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double log_cond = std::log(condition_number);
  Vector spectrum(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    spectrum[i] = std::exp(unit(rng) * log_cond);
  }
  return SpdMatrix(symmetrize(q * spectrum.asDiagonal() * q.transpose()));
}

// Random PSD contraction 0 <= R <= I: Haar eigenvectors, uniform spectrum.
inline Matrix random_psd_contraction(Eigen::Index dim, Rng& rng) {
  const Matrix v = haar_orthogonal(dim, rng);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector spectrum(dim);
  for (Eigen::Index i = 0; i < dim; ++i) spectrum[i] = unit(rng);
  Matrix r = v * spectrum.asDiagonal() * v.transpose();
  return 0.5 * (r + r.transpose());
}

// Uniform-ish feasible point Z = L + (U-L)^{1/2} R (U-L)^{1/2} with R a
// random PSD contraction.
inline SpdMatrix sample_feasible(const OperatorInterval& interval, Rng& rng) {
  if (interval.degenerate()) return interval.lower();
  const Matrix r = random_psd_contraction(interval.dim(), rng);
  const Matrix& p = interval.gap_sqrt();
  return SpdMatrix(symmetrize(interval.lower().mat() + p * r * p));
}

}  // namespace spdfw
