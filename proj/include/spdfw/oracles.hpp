#pragma once

// Closed-form linear oracles over an operator interval L <= Z <= U:
//   euclid_oracle  maximizes trace(S Z)
//   riem_oracle    maximizes trace(S log(X Z X))
// plus a self-contained brute-force maximizer used to verify both.

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "spdfw/interval.hpp"
#include "spdfw/manifold.hpp"
#include "spdfw/matrix.hpp"
#include "spdfw/sampling.hpp"

namespace spdfw {

struct OracleSolution {
  SpdMatrix z;
  double objective_value = 0.0;
  // Eigenvalues whose signs select the solution (Lambda of PSP, or D of S),
  // descending; empty for the brute-force oracle.
  Vector sign_spectrum;
  // Eigenvalues of the (transformed) interval gap, descending.
  Vector interval_spectrum;
};

namespace detail {

// Diagonal of [sgn(lambda)]_+ under the "1 at zero" convention.
inline Vector positive_sign_indicator(const Vector& eigenvalues) {
  Vector indicator(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    indicator[i] = eigenvalues[i] >= 0.0 ? 1.0 : 0.0;
  }
  return indicator;
}

// Hermitian square root of a PSD matrix given by its (near-)PSD form;
// eigenvalues below clamp are treated as zero.
inline Matrix clamped_sqrt(const Matrix& psd, double clamp) {
  const EigDecomposition eig = eig_sym(psd);
  Vector root(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < root.size(); ++i) {
    root[i] = eig.eigenvalues[i] > clamp ? std::sqrt(eig.eigenvalues[i]) : 0.0;
  }
  Matrix out = eig.eigenvectors * root.asDiagonal() * eig.eigenvectors.transpose();
  return 0.5 * (out + out.transpose());
}

}  // namespace detail

// Maximizer of trace(S Z) over L <= Z <= U (a convex SDP in closed form):
// with P = (U-L)^{1/2} and P S P = Q Lambda Q^T, the solution is
// Z = L + P Q [sgn(Lambda)]_+ Q^T P.
inline OracleSolution euclid_oracle(const SymMatrix& s,
                                    const OperatorInterval& interval) {
  detail::require_same_dim(s.dim(), interval.dim(), "euclid_oracle");
  const Matrix& l = interval.lower().mat();
  if (interval.degenerate()) {
    return OracleSolution{interval.lower(), s.mat().cwiseProduct(l).sum(),
                          Vector(), interval.gap_eigenvalues()};
  }
  const Matrix& p = interval.gap_sqrt();
  const EigDecomposition psp = eig_sym(p * s.mat() * p);
  const Vector indicator = detail::positive_sign_indicator(psp.eigenvalues);
  const Matrix projector =
      psp.eigenvectors * indicator.asDiagonal() * psp.eigenvectors.transpose();
  SpdMatrix z(symmetrize(l + p * projector * p));
  const double objective = s.mat().cwiseProduct(z.mat()).sum();
  return OracleSolution{std::move(z), objective, psp.eigenvalues,
                        interval.gap_eigenvalues()};
}

// Maximizer of trace(S log(X Z X)) over L <= Z <= U (a nonconvex program
// with a closed-form solution). Substituting Y = X Z X moves the constraint
// to [X L X, X U X]; rotating by the eigenvectors of S = Q D Q^T reduces the
// problem to the sign rule on D, and Z = X^{-1} Y X^{-1} undoes the chain.
inline OracleSolution riem_oracle(const SymMatrix& s, const SpdMatrix& x,
                                  const OperatorInterval& interval) {
  detail::require_same_dim(s.dim(), interval.dim(), "riem_oracle");
  detail::require_same_dim(x.dim(), interval.dim(), "riem_oracle");
  const Matrix lp = symmetrize(x.mat() * interval.lower().mat() * x.mat()).mat();
  const Matrix up = symmetrize(x.mat() * interval.upper().mat() * x.mat()).mat();

  const EigDecomposition s_eig = eig_sym(s.mat());
  const Matrix& q = s_eig.eigenvectors;
  const Matrix lpp = symmetrize(q.transpose() * lp * q).mat();
  const Matrix upp = symmetrize(q.transpose() * up * q).mat();

  const EigDecomposition gap = eig_sym(upp - lpp);
  const double scale = eig_sym(up).eigenvalues.maxCoeff();
  const double clamp = kDegenerateTolFactor * scale;

  Matrix w;  // optimum of the rotated problem, W = P_hat R P_hat + L''
  if (gap.eigenvalues.maxCoeff() <= clamp) {
    w = lpp;  // degenerate interval: Z = L
  } else {
    const Matrix p_hat = detail::clamped_sqrt(upp - lpp, clamp);
    const Vector indicator = detail::positive_sign_indicator(s_eig.eigenvalues);
    w = symmetrize(p_hat * indicator.asDiagonal() * p_hat + lpp).mat();
  }

  // objective = trace(S log Y) = trace(D log W)
  const SymMatrix log_w = matrix_fn(SymMatrix(w), ScalarFn::log);
  const double objective = s_eig.eigenvalues.dot(log_w.mat().diagonal());

  const Matrix y = symmetrize(q * w * q.transpose()).mat();
  Eigen::LLT<Matrix> llt(x.mat());
  const Matrix y_xinv = llt.solve(y).transpose();  // (X^{-1} Y)^T = Y X^{-1}
  SpdMatrix z(symmetrize(llt.solve(y_xinv)));      // X^{-1} Y X^{-1}
  return OracleSolution{std::move(z), objective, s_eig.eigenvalues,
                        gap.eigenvalues};
}

namespace detail {

// Projection onto the interval: clip the spectrum of
// (U-L)^{-1/2} (Z - L) (U-L)^{-1/2} to [0,1], degenerate directions pinned.
inline Matrix project_onto_interval(const Matrix& z,
                                    const OperatorInterval& interval) {
  const Vector& gap = interval.gap_eigenvalues();
  const Matrix& v = interval.gap_eigenvectors();
  Vector inv_root(gap.size());
  for (Eigen::Index i = 0; i < gap.size(); ++i) {
    inv_root[i] = gap[i] > 0.0 ? 1.0 / std::sqrt(gap[i]) : 0.0;
  }
  const Matrix pinv_sqrt = v * inv_root.asDiagonal() * v.transpose();
  const Matrix t = pinv_sqrt * (z - interval.lower().mat()) * pinv_sqrt;
  const EigDecomposition t_eig = eig_sym(t);
  Vector clipped = t_eig.eigenvalues.cwiseMax(0.0).cwiseMin(1.0);
  const Matrix tc = t_eig.eigenvectors * clipped.asDiagonal() *
                    t_eig.eigenvectors.transpose();
  const Matrix& p = interval.gap_sqrt();
  Matrix out = interval.lower().mat() + p * tc * p;
  return 0.5 * (out + out.transpose());
}

// Central finite-difference gradient of a matrix functional over the
// symmetric basis.
inline Matrix fd_objective_gradient(
    const std::function<double(const Matrix&)>& objective, const Matrix& z,
    double h) {
  const Eigen::Index d = z.rows();
  Matrix grad = Matrix::Zero(d, d);
  Matrix basis = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i; j < d; ++j) {
      basis.setZero();
      basis(i, j) = 1.0;
      basis(j, i) = 1.0;
      const double fp = objective(z + h * basis);
      const double fm = objective(z - h * basis);
      const double slope = (fp - fm) / (2.0 * h);
      grad(i, j) = slope;
      grad(j, i) = slope;
    }
  }
  return grad;
}

inline OracleSolution golden_section_scalar(
    const std::function<double(const Matrix&)>& objective,
    const OperatorInterval& interval) {
  const double lo = interval.lower()(0, 0);
  const double hi = interval.upper()(0, 0);
  auto eval = [&](double v) {
    Matrix m(1, 1);
    m(0, 0) = v;
    return objective(m);
  };
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - phi * (b - a);
  double d = a + phi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * (1.0 + std::abs(hi)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - phi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + phi * (b - a);
      fd = eval(d);
    }
  }
  double best_v = 0.5 * (a + b);
  double best_f = eval(best_v);
  // The optimum of a monotone objective sits on the boundary; check both ends.
  for (double v : {lo, hi}) {
    const double f = eval(v);
    if (f > best_f) {
      best_f = f;
      best_v = v;
    }
  }
  Matrix zm(1, 1);
  zm(0, 0) = best_v;
  return OracleSolution{SpdMatrix(zm), best_f, Vector(),
                        interval.gap_eigenvalues()};
}

}  // namespace detail

// Verification oracle: projected-gradient ascent from random feasible starts
// plus random feasible sampling. Independent of the closed forms above.
// Deterministic for a fixed seed. Guarded to dim <= 4.
inline OracleSolution brute_force_oracle(
    const std::function<double(const Matrix&)>& objective,
    const OperatorInterval& interval, int budget, unsigned seed = 1234) {
  if (interval.dim() > 4) {
    throw std::invalid_argument("brute_force_oracle: dim must be <= 4");
  }
  if (budget < 1000) {
    throw std::invalid_argument("brute_force_oracle: budget must be >= 1000");
  }
  if (interval.dim() == 1) {
    return detail::golden_section_scalar(objective, interval);
  }

  Rng rng(seed);
  Matrix best_z = interval.lower().mat();
  double best_f = objective(best_z);

  auto consider = [&](const Matrix& z, double f) {
    if (f > best_f) {
      best_f = f;
      best_z = z;
    }
  };

  if (!interval.degenerate()) {
    // (a) projected-gradient ascent, 20 random feasible starts
    const double h = 1e-6 * (1.0 + interval.upper_norm());
    for (int start = 0; start < 20; ++start) {
      Matrix z = sample_feasible(interval, rng).mat();
      double fz = objective(z);
      consider(z, fz);
      double step = 1.0;
      for (int it = 0; it < 60; ++it) {
        const Matrix grad = detail::fd_objective_gradient(objective, z, h);
        const double gnorm = grad.norm();
        if (gnorm < 1e-14) break;
        bool improved = false;
        double t = step / gnorm;
        for (int ls = 0; ls < 25; ++ls) {
          const Matrix cand =
              detail::project_onto_interval(z + t * grad, interval);
          const double fc = objective(cand);
          if (fc > fz + 1e-15 * (1.0 + std::abs(fz))) {
            z = cand;
            fz = fc;
            improved = true;
            step = std::min(1.0, 2.0 * t * gnorm);
            break;
          }
          t *= 0.5;
        }
        if (!improved) break;
        consider(z, fz);
      }
    }
    // (b) random feasible samples
    for (int i = 0; i < budget; ++i) {
      const Matrix z = sample_feasible(interval, rng).mat();
      consider(z, objective(z));
    }
  }

  return OracleSolution{SpdMatrix(symmetrize(best_z)), best_f, Vector(),
                        interval.gap_eigenvalues()};
}

}  // namespace spdfw
