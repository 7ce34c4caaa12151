// SPDX-License-Identifier: Apache-2.0

#include "core/convex_model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>

namespace mccm {

ConvexClassModel::ConvexClassModel(std::string label,
                                   std::vector<SpdMatrix> points)
    : label_(std::move(label)), points_(std::move(points)) {
  if (points_.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "ConvexClassModel: need at least one point");
  }
  for (const SpdMatrix& p : points_) {
    detail::require_same_dim(points_.front().dim(), p.dim(),
                             "ConvexClassModel");
  }
}

const char* variant_name(MccmVariant v) {
  switch (v) {
    case MccmVariant::FM:
      return "fm";
    case MccmVariant::CS:
      return "cs";
    case MccmVariant::LE:
      return "le";
  }
  return "?";
}

namespace detail {

ObjectiveGradient fm_objective(std::vector<Eigen::MatrixXd> logs) {
  const int n = static_cast<int>(logs.size());
  auto gram = std::make_shared<Eigen::MatrixXd>(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      (*gram)(i, j) = (*gram)(j, i) = logs[i].cwiseProduct(logs[j]).sum();
    }
  }
  return [gram](const Eigen::VectorXd& w, Eigen::VectorXd& grad) {
    const Eigen::VectorXd gw = *gram * w;
    grad = 2.0 * gw;
    return w.dot(gw);
  };
}

ObjectiveGradient cs_objective(std::vector<Eigen::MatrixXd> whitened) {
  auto points = std::make_shared<std::vector<Eigen::MatrixXd>>(
      std::move(whitened));
  return [points](const Eigen::VectorXd& w, Eigen::VectorXd& grad) {
    const auto& ps = *points;
    const int n = static_cast<int>(ps.size());
    const int d = static_cast<int>(ps.front().rows());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < n; ++i) {
      m.noalias() += w(i) * ps[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m);
    if (eig.info() != Eigen::Success) {
      throw Error(ErrorCode::EigFailed, "dist_cs: eigendecomposition failed");
    }
    if (eig.eigenvalues()(0) <= 0.0) {
      throw Error(ErrorCode::DegenerateMatrix,
                  "dist_cs: weighted combination lost positive definiteness");
    }
    const Eigen::VectorXd logs = eig.eigenvalues().array().log();
    // d(trace log^2)/dM = log(M) M^{-1}; both factors share the eigenbasis.
    const Eigen::VectorXd ratio = logs.array() / eig.eigenvalues().array();
    const Eigen::MatrixXd c = eig.eigenvectors() * ratio.asDiagonal() *
                              eig.eigenvectors().transpose();
    grad.resize(n);
    for (int i = 0; i < n; ++i) {
      grad(i) = 2.0 * c.cwiseProduct(ps[i]).sum();
    }
    return logs.squaredNorm();
  };
}

DistanceResult solve_fm_from_logs(const std::vector<Eigen::MatrixXd>& logs,
                                  const SpgParams& params) {
  const int n = static_cast<int>(logs.size());
  if (n == 1) {
    const double g0 = logs.front().squaredNorm();
    DistanceResult out{std::sqrt(std::max(g0, 0.0)),
                       SimplexWeights::uniform(1), SolveReport{}, std::nullopt};
    out.report.converged = true;
    out.report.final_objective = g0;
    return out;
  }
  auto [w, report] =
      spg_minimize(fm_objective(logs), SimplexWeights::uniform(n), params);
  return DistanceResult{std::sqrt(std::max(report.final_objective, 0.0)),
                        std::move(w), report, std::nullopt};
}

DistanceResult solve_cs_dense(const std::vector<Eigen::MatrixXd>& whitened,
                              const SpgParams& params) {
  const int n = static_cast<int>(whitened.size());
  const int d = static_cast<int>(whitened.front().rows());

  auto [w, report] =
      spg_minimize(cs_objective(whitened), SimplexWeights::uniform(n), params);

  Eigen::MatrixXd m_opt = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    m_opt.noalias() += w[i] * whitened[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
      Eigen::MatrixXd::Identity(d, d) - m_opt);
  const bool dominates = eig.eigenvalues()(0) >= -1e-10;

  return DistanceResult{std::sqrt(std::max(report.final_objective, 0.0)),
                        std::move(w), report, dominates};
}

DistanceResult solve_cs_factored(const std::vector<Eigen::MatrixXd>& factors,
                                 const Eigen::VectorXd& neg_log_scale,
                                 const SpgParams& params) {
  const int n = static_cast<int>(factors.size());
  const int d = static_cast<int>(factors.front().rows());

  double max_log_value = 0.0;
  ObjectiveGradient fg = [&](const Eigen::VectorXd& w, Eigen::VectorXd& grad) {
    Eigen::MatrixXd cols(d, n * d);
    for (int i = 0; i < n; ++i) {
      cols.middleCols(i * d, d) = std::sqrt(std::max(w(i), 0.0)) * factors[i];
    }
    const GradedEig eig = eig_of_gram_rowscaled(cols, neg_log_scale);
    max_log_value = eig.log_values.maxCoeff();

    // u_k columns pre-scaled by the row grading, so that
    // ||factors[i]^T u_scaled.col(k)|| = ||G_i^T u_k||.
    const Eigen::MatrixXd u_scaled =
        neg_log_scale.array().exp().matrix().asDiagonal() * eig.vectors;
    grad.setZero(n);
    double f = 0.0;
    for (int k = 0; k < d; ++k) {
      const double lv = eig.log_values(k);
      f += lv * lv;
      const Eigen::VectorXd uk = u_scaled.col(k);
      for (int i = 0; i < n; ++i) {
        const double nz = (factors[i].transpose() * uk).norm();
        if (nz > 0.0) {
          // (||G_i^T u_k|| / sigma_k)^2 evaluated through logs to survive
          // extreme grading.
          const double log_ratio = std::log(nz) - 0.5 * lv;
          grad(i) += 2.0 * lv * std::exp(2.0 * log_ratio);
        }
      }
    }
    return f;
  };

  auto [w, report] = spg_minimize(fg, SimplexWeights::uniform(n), params);
  // One more evaluation at the optimum refreshes the diagnostic.
  Eigen::VectorXd scratch(n);
  fg(w.values(), scratch);
  const bool dominates = max_log_value <= 1e-10;

  return DistanceResult{std::sqrt(std::max(report.final_objective, 0.0)),
                        std::move(w), report, dominates};
}

DistanceResult solve_le(const Eigen::VectorXd& y,
                        const Eigen::MatrixXd& dictionary,
                        const SpgParams& params) {
  const Eigen::MatrixXd gram = dictionary.transpose() * dictionary;
  const Eigen::VectorXd b = dictionary.transpose() * y;
  auto [w, report] = qp_simplex(gram, b, params);
  const double distance = (y - dictionary * w.values()).norm();
  return DistanceResult{distance, std::move(w), report, std::nullopt};
}

Eigen::MatrixXd le_dictionary(const ConvexClassModel& model) {
  const int d = model.dim();
  Eigen::MatrixXd dict(d * (d + 1) / 2, model.size());
  for (int j = 0; j < model.size(); ++j) {
    dict.col(j) = vectorize_symmetric(spd_log(model.points()[j]));
  }
  return dict;
}

namespace {

void require_query_dim(int query_dim, const ConvexClassModel& model,
                       const char* op) {
  detail::require_same_dim(query_dim, model.dim(), op);
}

std::vector<Eigen::MatrixXd> whitened_logs(const SqrtPair& roots,
                                           const ConvexClassModel& model) {
  std::vector<Eigen::MatrixXd> logs;
  logs.reserve(model.size());
  for (const SpdMatrix& x : model.points()) {
    const SpdMatrix whitened =
        SpdMatrix::unchecked(roots.inv_sqrt * x.mat() * roots.inv_sqrt);
    logs.push_back(spd_log(whitened).mat());
  }
  return logs;
}

}  // namespace

}  // namespace detail

DistanceResult dist_fm(const SpdMatrix& y, const ConvexClassModel& model,
                       const SpgParams& params) {
  detail::require_query_dim(y.dim(), model, "dist_fm");
  const SqrtPair roots = spd_sqrt_pair(y);
  return detail::solve_fm_from_logs(detail::whitened_logs(roots, model),
                                    params);
}

DistanceResult dist_fm(const FactoredSpd& y, const ConvexClassModel& model,
                       const SpgParams& params) {
  detail::require_query_dim(y.dim(), model, "dist_fm");
  std::vector<Eigen::MatrixXd> logs;
  logs.reserve(model.size());
  for (const SpdMatrix& x : model.points()) {
    logs.push_back(factored_whitened_log(y, x).mat());
  }
  return detail::solve_fm_from_logs(logs, params);
}

DistanceResult dist_cs(const SpdMatrix& y, const ConvexClassModel& model,
                       const SpgParams& params) {
  detail::require_query_dim(y.dim(), model, "dist_cs");
  const SqrtPair roots = spd_sqrt_pair(y);
  std::vector<Eigen::MatrixXd> whitened;
  whitened.reserve(model.size());
  for (const SpdMatrix& x : model.points()) {
    whitened.push_back(roots.inv_sqrt * x.mat() * roots.inv_sqrt);
  }
  return detail::solve_cs_dense(whitened, params);
}

DistanceResult dist_cs(const FactoredSpd& y, const ConvexClassModel& model,
                       const SpgParams& params) {
  detail::require_query_dim(y.dim(), model, "dist_cs");
  std::vector<Eigen::MatrixXd> factors;
  factors.reserve(model.size());
  for (const SpdMatrix& x : model.points()) {
    factors.push_back(y.basis_inverse() * spd_sqrt(x).mat());
  }
  return detail::solve_cs_factored(factors, -y.log_scale(), params);
}

DistanceResult dist_le(const SpdMatrix& y, const ConvexClassModel& model,
                       const SpgParams& params) {
  detail::require_query_dim(y.dim(), model, "dist_le");
  return detail::solve_le(vectorize_symmetric(spd_log(y)),
                          detail::le_dictionary(model), params);
}

DistanceResult dist_le(const FactoredSpd& y, const ConvexClassModel& model,
                       const SpgParams& params) {
  detail::require_query_dim(y.dim(), model, "dist_le");
  return detail::solve_le(vectorize_symmetric(y.log()),
                          detail::le_dictionary(model), params);
}

DistanceResult model_distance(const SpdMatrix& y, const ConvexClassModel& model,
                              MccmVariant variant, const SpgParams& params) {
  switch (variant) {
    case MccmVariant::FM:
      return dist_fm(y, model, params);
    case MccmVariant::CS:
      return dist_cs(y, model, params);
    case MccmVariant::LE:
      return dist_le(y, model, params);
  }
  throw Error(ErrorCode::InvalidArgument, "model_distance: unknown variant");
}

DistanceResult model_distance(const FactoredSpd& y,
                              const ConvexClassModel& model, MccmVariant variant,
                              const SpgParams& params) {
  switch (variant) {
    case MccmVariant::FM:
      return dist_fm(y, model, params);
    case MccmVariant::CS:
      return dist_cs(y, model, params);
    case MccmVariant::LE:
      return dist_le(y, model, params);
  }
  throw Error(ErrorCode::InvalidArgument, "model_distance: unknown variant");
}

DistanceResult euclidean_hull_dist(const Eigen::VectorXd& y,
                                   const std::vector<Eigen::VectorXd>& points,
                                   const SpgParams& params) {
  if (points.empty()) {
    throw Error(ErrorCode::InvalidArgument,
                "euclidean_hull_dist: need at least one point");
  }
  const int d = static_cast<int>(y.size());
  const int n = static_cast<int>(points.size());
  Eigen::MatrixXd x(d, n);
  for (int j = 0; j < n; ++j) {
    if (points[j].size() != d) {
      throw Error(ErrorCode::DimensionMismatch,
                  "euclidean_hull_dist: dimension mismatch");
    }
    x.col(j) = points[j];
  }
  return detail::solve_le(y, x, params);
}

}  // namespace mccm
