// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_GEOMETRY_HPP
#define MCCM_CORE_GEOMETRY_HPP

#include <Eigen/Core>

#include "core/matrix.hpp"

namespace mccm {

/// Affine-invariant inner product Tr(Y^-1 x Y^-1 z) of two tangent vectors
/// at the base point Y.
double airm_inner(const SpdMatrix& base, const SymMatrix& x,
                  const SymMatrix& z);

/// Norm of a tangent vector under airm_inner at the base point.
double airm_norm(const SpdMatrix& base, const SymMatrix& x);

/// Maps a tangent vector at the base point onto the manifold:
/// Y^{1/2} exp(Y^{-1/2} z Y^{-1/2}) Y^{1/2}.
SpdMatrix exp_map(const SpdMatrix& base, const SymMatrix& z);

/// Inverse of exp_map: Y^{1/2} log(Y^{-1/2} Z Y^{-1/2}) Y^{1/2}.
SymMatrix log_map(const SpdMatrix& base, const SpdMatrix& z);

/// Geodesic distance sqrt(Tr(log^2(X^{-1/2} Y X^{-1/2}))).
double geodesic_distance(const SpdMatrix& x, const SpdMatrix& y);

/// Log-Euclidean distance ||log X - log Y||_F.
double log_euclidean_distance(const SpdMatrix& x, const SpdMatrix& y);

/// Isometric vectorization of a symmetric matrix: column-major upper
/// triangle with off-diagonal entries scaled by sqrt(2), so that dot
/// products of vectors equal Frobenius inner products of matrices.
Eigen::VectorXd vectorize_symmetric(const SymMatrix& a);
Eigen::VectorXd vectorize_symmetric(const Eigen::MatrixXd& a);

/// Point at parameter t along the geodesic from x (t = 0) to y (t = 1);
/// t outside [0, 1] extrapolates.
SpdMatrix geodesic_point(const SpdMatrix& x, const SpdMatrix& y, double t);

namespace detail {

void require_same_dim(int a, int b, const char* op);

}  // namespace detail

}  // namespace mccm

#endif  // MCCM_CORE_GEOMETRY_HPP
