// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_MATRIX_HPP
#define MCCM_CORE_MATRIX_HPP

#include <Eigen/Core>

#include "core/error.hpp"

namespace mccm {

// Relative tolerance used when deciding whether an almost-symmetric input
// may be symmetrized instead of rejected.
inline constexpr double kSymTol = 1e-9;

// Relative accuracy contract of the symmetric eigendecomposition.
inline constexpr double kEigTol = 1e-12;

/// Smallest eigenvalue a matrix must exceed to count as positive definite,
/// relative to its largest eigenvalue (floored at 1).
inline double pd_floor(double max_eigenvalue) {
  return 1e-12 * (max_eigenvalue > 1.0 ? max_eigenvalue : 1.0);
}

class SpdMatrix;

/// A d x d real symmetric matrix; the tangent-vector type.  Construction
/// symmetrizes inputs that are within kSymTol of symmetric and rejects
/// anything further away.
class SymMatrix {
 public:
  explicit SymMatrix(Eigen::MatrixXd m);
  SymMatrix(const SpdMatrix& m);  // SPD matrices are symmetric

  static SymMatrix zero(int dim);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }

  double norm() const { return m_.norm(); }

 private:
  struct Trusted {};
  SymMatrix(Trusted, Eigen::MatrixXd m) : m_(std::move(m)) {}

  friend SymMatrix sym_unchecked(Eigen::MatrixXd m);

  Eigen::MatrixXd m_;
};

/// Builds a SymMatrix from an expression already known to be symmetric,
/// applying only the (A + A^T)/2 cleanup.
SymMatrix sym_unchecked(Eigen::MatrixXd m);

/// A d x d symmetric positive definite matrix; the manifold point type.
///
/// checked() fully validates (symmetry within kSymTol, smallest eigenvalue
/// above pd_floor) and is meant for data entering from the outside.
/// unchecked() trusts the caller and only symmetrizes; it is used by
/// operations whose output is positive definite by construction.
class SpdMatrix {
 public:
  static SpdMatrix checked(Eigen::MatrixXd m);
  static SpdMatrix unchecked(Eigen::MatrixXd m);

  static SpdMatrix identity(int dim);
  static SpdMatrix diagonal(const Eigen::VectorXd& entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }

 private:
  explicit SpdMatrix(Eigen::MatrixXd m) : m_(std::move(m)) {}

  Eigen::MatrixXd m_;
};

/// Symmetric eigendecomposition A = Q diag(values) Q^T, eigenvalues
/// ascending, Q orthonormal.
struct EigenPair {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

EigenPair sym_eig(const Eigen::MatrixXd& a);
inline EigenPair sym_eig(const SymMatrix& a) { return sym_eig(a.mat()); }

/// Matrix sqrt and inverse sqrt of the same SPD input, from one
/// eigendecomposition.  Solvers hold one of these per query.
struct SqrtPair {
  Eigen::MatrixXd sqrt;
  Eigen::MatrixXd inv_sqrt;
};

SqrtPair spd_sqrt_pair(const SpdMatrix& a);

// Eigenvalue-wise matrix functions Q f(Lambda) Q^T.  The exponential accepts
// any symmetric matrix; log / sqrt / inverse require eigenvalues above
// pd_floor and throw DegenerateMatrix otherwise.
SpdMatrix sym_exp(const SymMatrix& a);
SymMatrix spd_log(const SpdMatrix& a);
SpdMatrix spd_sqrt(const SpdMatrix& a);
SpdMatrix spd_inv_sqrt(const SpdMatrix& a);
SpdMatrix spd_inv(const SpdMatrix& a);

namespace detail {

/// Throws DegenerateMatrix unless all eigenvalues clear pd_floor.
void require_pd(const Eigen::VectorXd& eigenvalues, const char* op);

/// Symmetry check + (A + A^T)/2 cleanup shared by the wrapper types.
Eigen::MatrixXd symmetrized(Eigen::MatrixXd m, const char* type_name);

}  // namespace detail

}  // namespace mccm

#endif  // MCCM_CORE_MATRIX_HPP
