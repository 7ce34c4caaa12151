// SPDX-License-Identifier: Apache-2.0

#include "core/geometry.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <sstream>

namespace mccm {

namespace detail {

void require_same_dim(int a, int b, const char* op) {
  if (a != b) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << a << " vs " << b << ")";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace detail

double airm_inner(const SpdMatrix& base, const SymMatrix& x,
                  const SymMatrix& z) {
  detail::require_same_dim(base.dim(), x.dim(), "airm_inner");
  detail::require_same_dim(base.dim(), z.dim(), "airm_inner");
  const Eigen::MatrixXd inv = spd_inv(base).mat();
  return (inv * x.mat() * inv * z.mat()).trace();
}

double airm_norm(const SpdMatrix& base, const SymMatrix& x) {
  detail::require_same_dim(base.dim(), x.dim(), "airm_norm");
  const SqrtPair roots = spd_sqrt_pair(base);
  // ||Y^{-1/2} x Y^{-1/2}||_F; equals sqrt(airm_inner(Y, x, x)) but stays
  // nonnegative under rounding.
  return (roots.inv_sqrt * x.mat() * roots.inv_sqrt).norm();
}

SpdMatrix exp_map(const SpdMatrix& base, const SymMatrix& z) {
  detail::require_same_dim(base.dim(), z.dim(), "exp_map");
  const SqrtPair roots = spd_sqrt_pair(base);
  const SymMatrix whitened =
      sym_unchecked(roots.inv_sqrt * z.mat() * roots.inv_sqrt);
  const Eigen::MatrixXd e = sym_exp(whitened).mat();
  return SpdMatrix::unchecked(roots.sqrt * e * roots.sqrt);
}

SymMatrix log_map(const SpdMatrix& base, const SpdMatrix& z) {
  detail::require_same_dim(base.dim(), z.dim(), "log_map");
  const SqrtPair roots = spd_sqrt_pair(base);
  const SpdMatrix whitened =
      SpdMatrix::unchecked(roots.inv_sqrt * z.mat() * roots.inv_sqrt);
  const Eigen::MatrixXd l = spd_log(whitened).mat();
  return sym_unchecked(roots.sqrt * l * roots.sqrt);
}

double geodesic_distance(const SpdMatrix& x, const SpdMatrix& y) {
  detail::require_same_dim(x.dim(), y.dim(), "geodesic_distance");
  const Eigen::MatrixXd inv_sqrt = spd_inv_sqrt(x).mat();
  const SpdMatrix whitened =
      SpdMatrix::unchecked(inv_sqrt * y.mat() * inv_sqrt);
  EigenPair eig = sym_eig(whitened.mat());
  detail::require_pd(eig.values, "geodesic_distance");
  return eig.values.array().log().matrix().norm();
}

double log_euclidean_distance(const SpdMatrix& x, const SpdMatrix& y) {
  detail::require_same_dim(x.dim(), y.dim(), "log_euclidean_distance");
  return (spd_log(x).mat() - spd_log(y).mat()).norm();
}

Eigen::VectorXd vectorize_symmetric(const Eigen::MatrixXd& a) {
  const int d = static_cast<int>(a.rows());
  Eigen::VectorXd v(d * (d + 1) / 2);
  const double root2 = std::sqrt(2.0);
  int k = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < j; ++i) {
      v(k++) = root2 * a(i, j);
    }
    v(k++) = a(j, j);
  }
  return v;
}

Eigen::VectorXd vectorize_symmetric(const SymMatrix& a) {
  return vectorize_symmetric(a.mat());
}

SpdMatrix geodesic_point(const SpdMatrix& x, const SpdMatrix& y, double t) {
  detail::require_same_dim(x.dim(), y.dim(), "geodesic_point");
  const SqrtPair roots = spd_sqrt_pair(x);
  const SpdMatrix whitened =
      SpdMatrix::unchecked(roots.inv_sqrt * y.mat() * roots.inv_sqrt);
  EigenPair eig = sym_eig(whitened.mat());
  detail::require_pd(eig.values, "geodesic_point");
  const Eigen::VectorXd powered = (t * eig.values.array().log()).exp();
  if (!powered.allFinite()) {
    throw Error(ErrorCode::DegenerateMatrix,
                "geodesic_point: eigenvalue overflow during extrapolation");
  }
  const Eigen::MatrixXd core =
      eig.vectors * powered.asDiagonal() * eig.vectors.transpose();
  return SpdMatrix::unchecked(roots.sqrt * core * roots.sqrt);
}

}  // namespace mccm
