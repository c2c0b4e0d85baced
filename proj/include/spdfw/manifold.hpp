#pragma once

// Affine-invariant Riemannian geometry on symmetric positive definite
// matrices: spectral matrix functions, metric, geodesics, exp/log maps and
// the Euclidean-to-Riemannian gradient conversion.

#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "spdfw/matrix.hpp"

namespace spdfw {

enum class ScalarFn { exp, log, sqrt, inv_sqrt };

namespace detail {

inline const char* scalar_fn_name(ScalarFn f) {
  switch (f) {
    case ScalarFn::exp: return "exp";
    case ScalarFn::log: return "log";
    case ScalarFn::sqrt: return "sqrt";
    case ScalarFn::inv_sqrt: return "inv_sqrt";
  }
  return "?";
}

// Applies f to the spectrum of a symmetric matrix. When require_positive is
// set, any nonpositive eigenvalue is a domain error.
inline SymMatrix apply_spectral(const Matrix& m,
                                const std::function<double(double)>& f,
                                bool require_positive, const char* what) {
  const EigDecomposition eig = eig_sym(m);
  Vector mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (require_positive && !(lambda > 0.0)) {
      std::ostringstream msg;
      msg << what << ": eigenvalue " << lambda << " is outside the domain";
      throw std::domain_error(msg.str());
    }
    mapped[i] = f(lambda);
  }
  return symmetrize(eig.eigenvectors * mapped.asDiagonal() *
                    eig.eigenvectors.transpose());
}

// X^{1/2} and X^{-1/2} from a single eigendecomposition.
struct SqrtPair {
  Matrix half;
  Matrix inv_half;
};

inline SqrtPair sqrt_pair(const SpdMatrix& x) {
  const EigDecomposition eig = eig_sym(x.mat());
  Vector root = eig.eigenvalues.cwiseMax(0.0).cwiseSqrt();
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    if (!(root[i] > 0.0)) {
      throw std::domain_error("sqrt_pair: matrix is numerically singular");
    }
  }
  SqrtPair out;
  out.half = eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.transpose();
  out.inv_half = eig.eigenvectors * root.cwiseInverse().asDiagonal() *
                 eig.eigenvectors.transpose();
  out.half = 0.5 * (out.half + out.half.transpose());
  out.inv_half = 0.5 * (out.inv_half + out.inv_half.transpose());
  return out;
}

}  // namespace detail

inline SymMatrix matrix_fn(const SymMatrix& x, ScalarFn f) {
  switch (f) {
    case ScalarFn::exp:
      return detail::apply_spectral(
          x.mat(), [](double v) { return std::exp(v); }, false, "matrix_fn(exp)");
    case ScalarFn::log:
      return detail::apply_spectral(
          x.mat(), [](double v) { return std::log(v); }, true, "matrix_fn(log)");
    case ScalarFn::sqrt:
      return detail::apply_spectral(
          x.mat(), [](double v) { return std::sqrt(v); }, true, "matrix_fn(sqrt)");
    case ScalarFn::inv_sqrt:
      return detail::apply_spectral(
          x.mat(), [](double v) { return 1.0 / std::sqrt(v); }, true,
          "matrix_fn(inv_sqrt)");
  }
  throw std::invalid_argument("matrix_fn: unknown function tag");
}

inline SymMatrix matrix_fn(const SpdMatrix& x, ScalarFn f) {
  return matrix_fn(x.sym(), f);
}

// Fractional power X^t through the spectrum.
inline SymMatrix matrix_power(const SymMatrix& x, double t) {
  return detail::apply_spectral(
      x.mat(), [t](double v) { return std::pow(v, t); }, true, "matrix_power");
}

inline SymMatrix matrix_power(const SpdMatrix& x, double t) {
  return matrix_power(x.sym(), t);
}

// Affine-invariant metric <A,B>_X = trace(X^{-1} A X^{-1} B).
inline double inner(const SpdMatrix& base, const SymMatrix& a,
                    const SymMatrix& b) {
  detail::require_same_dim(base.dim(), a.dim(), "inner");
  detail::require_same_dim(base.dim(), b.dim(), "inner");
  Eigen::LLT<Matrix> llt(base.mat());
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("inner: base point is not positive definite");
  }
  const Matrix xa = llt.solve(a.mat());
  const Matrix xb = llt.solve(b.mat());
  return xa.cwiseProduct(xb.transpose()).sum();
}

inline double norm_at(const SpdMatrix& base, const SymMatrix& a) {
  return std::sqrt(std::max(0.0, inner(base, a, a)));
}

// Geodesic X #_t Y = X^{1/2} (X^{-1/2} Y X^{-1/2})^t X^{1/2}; the weighted
// geometric mean of X and Y. t must lie in [0,1]; no clamping.
inline SpdMatrix geodesic(const SpdMatrix& x, const SpdMatrix& y, double t) {
  detail::require_same_dim(x.dim(), y.dim(), "geodesic");
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream msg;
    msg << "geodesic: t = " << t << " is outside [0,1]";
    throw std::out_of_range(msg.str());
  }
  if (t == 0.0) return x;
  if (t == 1.0) return y;
  const detail::SqrtPair xr = detail::sqrt_pair(x);
  const SymMatrix inner_pow =
      matrix_power(symmetrize(xr.inv_half * y.mat() * xr.inv_half), t);
  return SpdMatrix(symmetrize(xr.half * inner_pow.mat() * xr.half));
}

// Riemannian distance ||log(X^{-1/2} Y X^{-1/2})||_F.
inline double distance(const SpdMatrix& x, const SpdMatrix& y) {
  detail::require_same_dim(x.dim(), y.dim(), "distance");
  const detail::SqrtPair xr = detail::sqrt_pair(x);
  const Matrix c = xr.inv_half * y.mat() * xr.inv_half;
  const EigDecomposition eig = eig_sym(c);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (!(lambda > 0.0)) {
      throw std::domain_error("distance: arguments are not both positive definite");
    }
    const double l = std::log(lambda);
    sum += l * l;
  }
  return std::sqrt(sum);
}

// Exp_X(A) = X^{1/2} exp(X^{-1/2} A X^{-1/2}) X^{1/2}.
inline SpdMatrix exp_map(const SpdMatrix& x, const SymMatrix& tangent) {
  detail::require_same_dim(x.dim(), tangent.dim(), "exp_map");
  const detail::SqrtPair xr = detail::sqrt_pair(x);
  const SymMatrix e = matrix_fn(
      symmetrize(xr.inv_half * tangent.mat() * xr.inv_half), ScalarFn::exp);
  return SpdMatrix(symmetrize(xr.half * e.mat() * xr.half));
}

// Exp_X^{-1}(Y) = X^{1/2} log(X^{-1/2} Y X^{-1/2}) X^{1/2}.
inline SymMatrix log_map(const SpdMatrix& x, const SpdMatrix& y) {
  detail::require_same_dim(x.dim(), y.dim(), "log_map");
  const detail::SqrtPair xr = detail::sqrt_pair(x);
  const SymMatrix l = matrix_fn(
      symmetrize(xr.inv_half * y.mat() * xr.inv_half), ScalarFn::log);
  return symmetrize(xr.half * l.mat() * xr.half);
}

// grad phi(X) = X sym(nabla phi(X)) X.
inline SymMatrix riem_grad(const SpdMatrix& x, const Matrix& eucl_grad) {
  detail::require_same_dim(x.dim(), eucl_grad.rows(), "riem_grad");
  const SymMatrix h = symmetrize(eucl_grad);
  return symmetrize(x.mat() * h.mat() * x.mat());
}

// <grad phi(X), Exp_X^{-1}(Y)>_X written in its stable Frobenius form
// <X^{1/2} sym(G) X^{1/2}, log(X^{-1/2} Y X^{-1/2})>. This is the objective
// the Riemannian linear oracle minimizes.
inline double directional_pairing(const SpdMatrix& x, const Matrix& eucl_grad,
                                  const SpdMatrix& y) {
  detail::require_same_dim(x.dim(), eucl_grad.rows(), "directional_pairing");
  detail::require_same_dim(x.dim(), y.dim(), "directional_pairing");
  const detail::SqrtPair xr = detail::sqrt_pair(x);
  const SymMatrix h = symmetrize(eucl_grad);
  const SymMatrix conjugated = symmetrize(xr.half * h.mat() * xr.half);
  const SymMatrix l = matrix_fn(
      symmetrize(xr.inv_half * y.mat() * xr.inv_half), ScalarFn::log);
  return conjugated.mat().cwiseProduct(l.mat()).sum();
}

}  // namespace spdfw
