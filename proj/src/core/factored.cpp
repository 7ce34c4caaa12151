// SPDX-License-Identifier: Apache-2.0

#include "core/factored.hpp"

#include "core/geometry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mccm {

namespace {

constexpr double kOrthTol = 1e-15;
constexpr int kMaxSweeps = 60;

Eigen::VectorXd safe_exp(const Eigen::VectorXd& v, const char* op) {
  if ((v.array().abs() > 700.0).any()) {
    throw Error(ErrorCode::DegenerateMatrix,
                std::string(op) + ": scale exponent beyond double range");
  }
  return v.array().exp();
}

}  // namespace

ColumnJacobiSvd one_sided_jacobi_svd(Eigen::MatrixXd a) {
  const int n = static_cast<int>(a.cols());
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double app = a.col(p).squaredNorm();
        const double aqq = a.col(q).squaredNorm();
        if (app == 0.0 || aqq == 0.0) {
          continue;
        }
        const double apq = a.col(p).dot(a.col(q));
        if (std::abs(apq) <= kOrthTol * std::sqrt(app) * std::sqrt(aqq)) {
          continue;
        }
        rotated = true;
        const double zeta = (aqq - app) / (2.0 * apq);
        const double t =
            std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (int r = 0; r < a.rows(); ++r) {
          const double ap = a(r, p), aq2 = a(r, q);
          a(r, p) = c * ap - s * aq2;
          a(r, q) = s * ap + c * aq2;
        }
        for (int r = 0; r < n; ++r) {
          const double vp = v(r, p), vq = v(r, q);
          v(r, p) = c * vp - s * vq;
          v(r, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) {
      break;
    }
    if (sweep == kMaxSweeps - 1) {
      throw Error(ErrorCode::EigFailed,
                  "one_sided_jacobi_svd: no convergence after sweep cap");
    }
  }

  Eigen::VectorXd sigma(n);
  for (int j = 0; j < n; ++j) {
    sigma(j) = a.col(j).norm();
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return sigma(i) < sigma(j); });

  ColumnJacobiSvd out;
  out.sigma.resize(n);
  out.scaled_left.resize(a.rows(), n);
  out.right.resize(n, n);
  for (int j = 0; j < n; ++j) {
    out.sigma(j) = sigma(order[j]);
    out.scaled_left.col(j) = a.col(order[j]);
    out.right.col(j) = v.col(order[j]);
  }
  return out;
}

namespace {

void require_positive_sigma(const Eigen::VectorXd& sigma, const char* op) {
  if (sigma(0) <= 0.0 || !sigma.allFinite()) {
    throw Error(ErrorCode::DegenerateMatrix,
                std::string(op) + ": factor is numerically rank deficient");
  }
}

}  // namespace

GradedEig eig_of_gram_rowscaled(const Eigen::MatrixXd& w,
                                const Eigen::VectorXd& row_log_scale) {
  // G = diag(e^s) w,  G G^T = V sigma^2 V^T from the SVD of G^T = w^T diag(e^s).
  const Eigen::VectorXd scale = safe_exp(row_log_scale, "eig_of_gram_rowscaled");
  Eigen::MatrixXd a = w.transpose() * scale.asDiagonal();
  ColumnJacobiSvd svd = one_sided_jacobi_svd(std::move(a));
  require_positive_sigma(svd.sigma, "eig_of_gram_rowscaled");
  GradedEig out;
  out.log_values = 2.0 * svd.sigma.array().log();
  out.vectors = std::move(svd.right);
  return out;
}

GradedEig eig_of_gram_colscaled(const Eigen::MatrixXd& w,
                                const Eigen::VectorXd& col_log_scale) {
  // F = w diag(e^s),  F F^T = U sigma^2 U^T with U from the SVD of F itself.
  const Eigen::VectorXd scale = safe_exp(col_log_scale, "eig_of_gram_colscaled");
  Eigen::MatrixXd a = w * scale.asDiagonal();
  ColumnJacobiSvd svd = one_sided_jacobi_svd(std::move(a));
  require_positive_sigma(svd.sigma, "eig_of_gram_colscaled");
  GradedEig out;
  out.log_values = 2.0 * svd.sigma.array().log();
  out.vectors = svd.scaled_left * svd.sigma.cwiseInverse().asDiagonal();
  return out;
}

SymMatrix log_from_graded(const GradedEig& eig) {
  return sym_unchecked(eig.vectors * eig.log_values.asDiagonal() *
                       eig.vectors.transpose());
}

FactoredSpd::FactoredSpd(Eigen::MatrixXd basis, Eigen::VectorXd log_scale)
    : basis_(std::move(basis)), log_scale_(std::move(log_scale)) {
  if (basis_.rows() != basis_.cols() || basis_.rows() < 1 ||
      basis_.rows() != log_scale_.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "FactoredSpd: basis must be square and match the scales");
  }
  if (!basis_.allFinite() || !log_scale_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument,
                "FactoredSpd: entries must be finite");
  }
}

const Eigen::MatrixXd& FactoredSpd::basis_inverse() const {
  if (basis_inverse_.size() == 0) {
    basis_inverse_ = basis_.partialPivLu().inverse();
  }
  return basis_inverse_;
}

SpdMatrix FactoredSpd::materialize() const {
  const Eigen::VectorXd scale = safe_exp(log_scale_, "FactoredSpd");
  Eigen::MatrixXd f = basis_ * scale.asDiagonal();
  return SpdMatrix::unchecked(f * f.transpose());
}

SymMatrix FactoredSpd::log() const {
  return log_from_graded(eig_of_gram_colscaled(basis_, log_scale_));
}

FactoredSpd factored_geodesic_point(const SpdMatrix& x, const SpdMatrix& y,
                                    double t) {
  const SqrtPair roots = spd_sqrt_pair(x);
  const SpdMatrix whitened =
      SpdMatrix::unchecked(roots.inv_sqrt * y.mat() * roots.inv_sqrt);
  EigenPair eig = sym_eig(whitened.mat());
  detail::require_pd(eig.values, "factored_geodesic_point");
  return FactoredSpd(roots.sqrt * eig.vectors,
                     0.5 * t * eig.values.array().log());
}

double factored_geodesic_distance(const FactoredSpd& q, const SpdMatrix& z) {
  detail::require_same_dim(q.dim(), z.dim(), "factored_geodesic_distance");
  const Eigen::MatrixXd w = q.basis_inverse() * spd_sqrt(z).mat();
  GradedEig eig = eig_of_gram_rowscaled(w, -q.log_scale());
  return eig.log_values.norm();
}

SymMatrix factored_whitened_log(const FactoredSpd& q, const SpdMatrix& x) {
  detail::require_same_dim(q.dim(), x.dim(), "factored_whitened_log");
  const Eigen::MatrixXd w = q.basis_inverse() * spd_sqrt(x).mat();
  return log_from_graded(eig_of_gram_rowscaled(w, -q.log_scale()));
}

}  // namespace mccm
