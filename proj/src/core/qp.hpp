// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_QP_HPP
#define MCCM_CORE_QP_HPP

#include <Eigen/Core>

#include <utility>

#include "core/spg.hpp"

namespace mccm {

/// Solves min_w  w^T G w - 2 b^T w  over the probability simplex.
///
/// G must be symmetric positive semi-definite (within 1e-8 relative);
/// anything further off throws InvalidGram.  The solve runs the shared SPG
/// core at a tightened tolerance, refines the active support by solving the
/// equality-constrained KKT system, and certifies the result: stationarity,
/// dual feasibility and complementarity residuals must all be below 1e-7 or
/// the call throws SolverFailed.
std::pair<SimplexWeights, SolveReport> qp_simplex(const Eigen::MatrixXd& g,
                                                  const Eigen::VectorXd& b,
                                                  const SpgParams& params = {});

/// Largest KKT residual of a candidate solution; exposed for tests.
double qp_kkt_residual(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& w);

inline constexpr double kQpKktTol = 1e-7;

}  // namespace mccm

#endif  // MCCM_CORE_QP_HPP
