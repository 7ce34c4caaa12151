// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_FACTORED_HPP
#define MCCM_CORE_FACTORED_HPP

#include <Eigen/Core>

#include "core/matrix.hpp"

namespace mccm {

// Spectral computations for SPD matrices carried in factored form
// P = F F^T with F = basis * diag(exp(log_scale)).
//
// Materializing such a matrix destroys its small eigenvalues once the
// dynamic range exceeds 1/eps, so the routines here work on the factor
// instead: a one-sided Jacobi SVD on a column-scaled matrix B * D computes
// every singular value with a relative error governed by the conditioning
// of B alone, not of B * D.  That keeps geodesic extrapolations far along
// the manifold (eigenvalue ranges like e^{+-100}) computable in doubles.

/// Singular value decomposition a = U diag(sigma) V^T, sigma ascending,
/// via one-sided Jacobi rotations on the columns of a.
struct ColumnJacobiSvd {
  Eigen::VectorXd sigma;
  Eigen::MatrixXd scaled_left;  // U * diag(sigma), i.e. a * V
  Eigen::MatrixXd right;        // V, the accumulated rotations
};

ColumnJacobiSvd one_sided_jacobi_svd(Eigen::MatrixXd a);

/// Log-eigendecomposition of an SPD matrix held in factored form:
/// the represented matrix equals vectors * diag(exp(log_values)) * vectors^T.
struct GradedEig {
  Eigen::VectorXd log_values;
  Eigen::MatrixXd vectors;
};

/// Eigen-log of G G^T where G = diag(exp(row_log_scale)) * w.
/// w must be well-conditioned; the dynamic range lives in the scales.
GradedEig eig_of_gram_rowscaled(const Eigen::MatrixXd& w,
                                const Eigen::VectorXd& row_log_scale);

/// Eigen-log of F F^T where F = w * diag(exp(col_log_scale)).
GradedEig eig_of_gram_colscaled(const Eigen::MatrixXd& w,
                                const Eigen::VectorXd& col_log_scale);

SymMatrix log_from_graded(const GradedEig& eig);

/// SPD point P = F F^T, F = basis * diag(exp(log_scale)), with a
/// well-conditioned basis.
class FactoredSpd {
 public:
  FactoredSpd(Eigen::MatrixXd basis, Eigen::VectorXd log_scale);

  int dim() const { return static_cast<int>(basis_.rows()); }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::VectorXd& log_scale() const { return log_scale_; }

  /// Inverse of the basis (computed once, reused by whitening).
  const Eigen::MatrixXd& basis_inverse() const;

  /// Forms the represented matrix; only sensible at mild dynamic range.
  SpdMatrix materialize() const;

  /// log of the represented matrix.
  SymMatrix log() const;

 private:
  Eigen::MatrixXd basis_;
  Eigen::VectorXd log_scale_;
  mutable Eigen::MatrixXd basis_inverse_;  // lazily filled
};

/// Factored representation of geodesic_point(x, y, t); exact for any t for
/// which exp(t/2 * log-eigenvalues) is representable.
FactoredSpd factored_geodesic_point(const SpdMatrix& x, const SpdMatrix& y,
                                    double t);

/// Geodesic distance from the factored point q to z.
double factored_geodesic_distance(const FactoredSpd& q, const SpdMatrix& z);

/// log(F^{-1} X F^{-T}) for the factored query q = F F^T.  Orthogonally
/// similar to log(Q^{-1/2} X Q^{-1/2}), so Frobenius norms and traces of
/// products of such logs are unchanged.
SymMatrix factored_whitened_log(const FactoredSpd& q, const SpdMatrix& x);

}  // namespace mccm

#endif  // MCCM_CORE_FACTORED_HPP
