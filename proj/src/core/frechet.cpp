// SPDX-License-Identifier: Apache-2.0

#include "core/frechet.hpp"

#include <cmath>
#include <sstream>

namespace mccm {

void MeanParams::validate() const {
  if (max_iter < 1 || step <= 0.0 || step > 1.0) {
    throw Error(ErrorCode::InvalidArgument, "MeanParams: invalid settings");
  }
}

double MeanParams::effective_tol(int dim) const {
  return tol > 0.0 ? tol : 1e-9 * static_cast<double>(dim);
}

namespace {

struct WeightedPoints {
  std::vector<const SpdMatrix*> points;
  std::vector<double> weights;
  int dim = 0;
};

WeightedPoints gather(const std::vector<SpdMatrix>& points,
                      const SimplexWeights& weights) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument, "mean: need at least one point");
  }
  if (weights.size() != static_cast<int>(points.size())) {
    throw Error(ErrorCode::DimensionMismatch,
                "mean: weights must match the number of points");
  }
  WeightedPoints out;
  out.dim = points.front().dim();
  for (std::size_t i = 0; i < points.size(); ++i) {
    detail::require_same_dim(out.dim, points[i].dim(), "mean");
    if (weights[static_cast<int>(i)] > 0.0) {
      out.points.push_back(&points[i]);
      out.weights.push_back(weights[static_cast<int>(i)]);
    }
  }
  return out;
}

// Whitened tangent step and objective at m, in one pass over the points.
struct IterationState {
  Eigen::MatrixXd tangent_whitened;  // sum_i w_i log(M^{-1/2} X_i M^{-1/2})
  double objective = 0.0;            // sum_i w_i d_g^2(M, X_i)
};

IterationState evaluate(const SqrtPair& roots, const WeightedPoints& wp) {
  const int d = static_cast<int>(roots.sqrt.rows());
  IterationState state;
  state.tangent_whitened = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < wp.points.size(); ++i) {
    const SpdMatrix whitened = SpdMatrix::unchecked(
        roots.inv_sqrt * wp.points[i]->mat() * roots.inv_sqrt);
    EigenPair eig = sym_eig(whitened.mat());
    detail::require_pd(eig.values, "frechet_mean");
    const Eigen::VectorXd logs = eig.values.array().log();
    state.tangent_whitened.noalias() +=
        wp.weights[i] *
        (eig.vectors * logs.asDiagonal() * eig.vectors.transpose());
    state.objective += wp.weights[i] * logs.squaredNorm();
  }
  state.tangent_whitened =
      0.5 * (state.tangent_whitened + state.tangent_whitened.transpose());
  return state;
}

double objective_at(const SpdMatrix& m, const WeightedPoints& wp) {
  double obj = 0.0;
  const Eigen::MatrixXd inv_sqrt = spd_inv_sqrt(m).mat();
  for (std::size_t i = 0; i < wp.points.size(); ++i) {
    const SpdMatrix whitened =
        SpdMatrix::unchecked(inv_sqrt * wp.points[i]->mat() * inv_sqrt);
    EigenPair eig = sym_eig(whitened.mat());
    detail::require_pd(eig.values, "frechet_mean");
    obj += wp.weights[i] * eig.values.array().log().matrix().squaredNorm();
  }
  return obj;
}

}  // namespace

SpdMatrix le_mean(const std::vector<SpdMatrix>& points,
                  const SimplexWeights& weights) {
  WeightedPoints wp = gather(points, weights);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(wp.dim, wp.dim);
  for (std::size_t i = 0; i < wp.points.size(); ++i) {
    acc.noalias() += wp.weights[i] * spd_log(*wp.points[i]).mat();
  }
  return sym_exp(sym_unchecked(std::move(acc)));
}

double karcher_residual(const SpdMatrix& m, const std::vector<SpdMatrix>& points,
                        const SimplexWeights& weights) {
  WeightedPoints wp = gather(points, weights);
  detail::require_same_dim(m.dim(), wp.dim, "karcher_residual");
  const SqrtPair roots = spd_sqrt_pair(m);
  const IterationState state = evaluate(roots, wp);
  return (roots.sqrt * state.tangent_whitened * roots.sqrt).norm();
}

SpdMatrix frechet_mean(const std::vector<SpdMatrix>& points,
                       const SimplexWeights& weights,
                       const MeanParams& params) {
  params.validate();
  WeightedPoints wp = gather(points, weights);
  if (wp.points.size() == 1) {
    return *wp.points.front();
  }
  const double tol = params.effective_tol(wp.dim);

  SpdMatrix m = le_mean(points, weights);
  double residual = 0.0;

  for (int iter = 0; iter < params.max_iter; ++iter) {
    const SqrtPair roots = spd_sqrt_pair(m);
    const IterationState state = evaluate(roots, wp);
    residual = (roots.sqrt * state.tangent_whitened * roots.sqrt).norm();
    if (residual <= tol) {
      return m;
    }

    double step = params.step;
    for (;;) {
      const SpdMatrix candidate = SpdMatrix::unchecked(
          roots.sqrt * sym_exp(sym_unchecked(step * state.tangent_whitened)).mat() *
          roots.sqrt);
      if (objective_at(candidate, wp) <= state.objective) {
        m = candidate;
        break;
      }
      step *= 0.5;
      if (step < 1e-8 * params.step) {
        // Flat to rounding; the residual check below decides.
        m = candidate;
        break;
      }
    }
  }

  residual = karcher_residual(m, points, weights);
  if (residual <= tol) {
    return m;
  }
  std::ostringstream os;
  os << "frechet_mean: residual " << residual << " above tolerance " << tol
     << " after " << params.max_iter << " iterations";
  throw MaxIterError(os.str(), m.mat(), residual);
}

}  // namespace mccm
