#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace spdfw {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Relative tolerance for the symmetry invariant of SymMatrix/SpdMatrix.
inline constexpr double kSymmetryTol = 1e-12;
// A matrix counts as positive definite when lambda_min > kPdTolFactor * lambda_max.
inline constexpr double kPdTolFactor = 1e-10;

namespace detail {

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << ": expected a nonempty square matrix, got " << m.rows()
        << "x" << m.cols();
    throw std::invalid_argument(msg.str());
  }
}

inline void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(msg.str());
  }
}

inline double symmetry_defect(const Matrix& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

inline bool nearly_symmetric(const Matrix& m) {
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  return symmetry_defect(m) <= kSymmetryTol * scale;
}

}  // namespace detail

// Exact symmetrization (M + M^T)/2 of an arbitrary square matrix.
class SymMatrix;
inline SymMatrix symmetrize(const Matrix& m);

// Dense real symmetric matrix; models a tangent vector on the SPD manifold.
// Stores an exactly symmetric copy of its input.
class SymMatrix {
 public:
  explicit SymMatrix(Matrix m) {
    detail::require_square(m, "SymMatrix");
    if (!detail::nearly_symmetric(m)) {
      std::ostringstream msg;
      msg << "SymMatrix: input is not symmetric (defect "
          << detail::symmetry_defect(m) << ")";
      throw std::invalid_argument(msg.str());
    }
    m_ = 0.5 * (m + m.transpose());
  }

  static SymMatrix zero(Eigen::Index dim) {
    return SymMatrix(Matrix::Zero(dim, dim), unchecked_t{});
  }

  const Matrix& mat() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  double frobenius_norm() const { return m_.norm(); }

 private:
  struct unchecked_t {};
  SymMatrix(Matrix m, unchecked_t) : m_(std::move(m)) {}
  friend SymMatrix symmetrize(const Matrix& m);

  Matrix m_;
};

inline SymMatrix symmetrize(const Matrix& m) {
  detail::require_square(m, "symmetrize");
  return SymMatrix(0.5 * (m + m.transpose()), SymMatrix::unchecked_t{});
}

// Symmetric positive definite matrix; a point on the manifold P_d.
// Construction validates both the symmetry and the spectral invariant,
// so a live SpdMatrix is always safe to feed into inverses, logs and roots.
class SpdMatrix {
 public:
  explicit SpdMatrix(const Matrix& m) : SpdMatrix(SymMatrix(m)) {}

  explicit SpdMatrix(SymMatrix m) : m_(std::move(m)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m_.mat(),
                                                 Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("SpdMatrix: eigenvalue computation failed");
    }
    const double lambda_min = solver.eigenvalues().minCoeff();
    const double lambda_max = solver.eigenvalues().maxCoeff();
    if (!(lambda_max > 0.0) || !(lambda_min > kPdTolFactor * lambda_max)) {
      std::ostringstream msg;
      msg << "SpdMatrix: not positive definite (min eigenvalue " << lambda_min
          << ", max " << lambda_max << ")";
      throw std::domain_error(msg.str());
    }
  }

  static SpdMatrix identity(Eigen::Index dim) {
    return SpdMatrix(SymMatrix(Matrix::Identity(dim, dim)));
  }

  const Matrix& mat() const noexcept { return m_.mat(); }
  const SymMatrix& sym() const noexcept { return m_; }
  Eigen::Index dim() const noexcept { return m_.dim(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  SymMatrix m_;
};

// Eigendecomposition of a symmetric matrix with eigenvalues in descending
// order; Q * diag(lambda) * Q^T reconstructs the input.
struct EigDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  Matrix reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
  }
};

inline EigDecomposition eig_sym(const Matrix& m) {
  detail::require_square(m, "eig_sym");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig_sym: eigenvalue computation failed");
  }
  EigDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

inline EigDecomposition eig_sym(const SymMatrix& m) { return eig_sym(m.mat()); }
inline EigDecomposition eig_sym(const SpdMatrix& m) { return eig_sym(m.mat()); }

}  // namespace spdfw
