// SPDX-License-Identifier: Apache-2.0

#include "core/qp.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "core/matrix.hpp"

namespace mccm {

namespace {

constexpr double kGramTol = 1e-8;

void check_gram(const Eigen::MatrixXd& g, const Eigen::VectorXd& b) {
  if (g.rows() != g.cols() || g.rows() < 1 || b.size() != g.rows()) {
    throw Error(ErrorCode::InvalidGram,
                "qp_simplex: G must be square and match b");
  }
  if (!g.allFinite() || !b.allFinite()) {
    throw Error(ErrorCode::InvalidGram, "qp_simplex: non-finite input");
  }
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > kGramTol * scale) {
    throw Error(ErrorCode::InvalidGram, "qp_simplex: G is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(0.5 *
                                                     (g + g.transpose()));
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::EigFailed, "qp_simplex: eig of G failed");
  }
  const double min_eig = eig.eigenvalues()(0);
  const double max_eig = eig.eigenvalues()(g.rows() - 1);
  if (min_eig < -kGramTol * std::max(1.0, max_eig)) {
    std::ostringstream os;
    os << "qp_simplex: G is not positive semi-definite (min eigenvalue "
       << min_eig << ")";
    throw Error(ErrorCode::InvalidGram, os.str());
  }
}

double objective(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                 const Eigen::VectorXd& w) {
  return w.dot(g * w) - 2.0 * b.dot(w);
}

/// Solves the equality-constrained problem restricted to the support set,
/// growing/shrinking the support a bounded number of times.  Returns an
/// empty vector when the restricted system is singular.
Eigen::VectorXd polish_on_support(const Eigen::MatrixXd& g,
                                  const Eigen::VectorXd& b,
                                  const Eigen::VectorXd& w_spg) {
  const int n = static_cast<int>(w_spg.size());
  std::vector<int> support;
  for (int i = 0; i < n; ++i) {
    if (w_spg(i) > 1e-10) {
      support.push_back(i);
    }
  }
  if (support.empty()) {
    return Eigen::VectorXd();
  }

  for (int pass = 0; pass < 2 * n + 2; ++pass) {
    const int m = static_cast<int>(support.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (int r = 0; r < m; ++r) {
      for (int c = 0; c < m; ++c) {
        kkt(r, c) = 2.0 * g(support[r], support[c]);
      }
      kkt(r, m) = 1.0;
      kkt(m, r) = 1.0;
      rhs(r) = 2.0 * b(support[r]);
    }
    rhs(m) = 1.0;

    Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
    if (!lu.isInvertible()) {
      return Eigen::VectorXd();
    }
    Eigen::VectorXd sol = lu.solve(rhs);
    const double lambda = sol(m);

    // Drop the most negative support weight, if any.
    int drop = -1;
    double most_negative = -1e-12;
    for (int r = 0; r < m; ++r) {
      if (sol(r) < most_negative) {
        most_negative = sol(r);
        drop = r;
      }
    }
    if (drop >= 0) {
      if (m == 1) {
        return Eigen::VectorXd();
      }
      support.erase(support.begin() + drop);
      continue;
    }

    Eigen::VectorXd w = Eigen::VectorXd::Zero(n);
    for (int r = 0; r < m; ++r) {
      w(support[r]) = std::max(sol(r), 0.0);
    }
    const double sum = w.sum();
    if (sum <= 0.0) {
      return Eigen::VectorXd();
    }
    w /= sum;

    // Add the worst off-support dual violation, if any.
    const Eigen::VectorXd q = 2.0 * (g * w - b);
    int add = -1;
    double worst = -1e-9;
    for (int i = 0; i < n; ++i) {
      if (w(i) == 0.0 && q(i) - lambda < worst) {
        worst = q(i) - lambda;
        add = i;
      }
    }
    if (add >= 0 && static_cast<int>(support.size()) < n) {
      support.push_back(add);
      std::sort(support.begin(), support.end());
      continue;
    }
    return w;
  }
  return Eigen::VectorXd();
}

}  // namespace

double qp_kkt_residual(const Eigen::MatrixXd& g, const Eigen::VectorXd& b,
                       const Eigen::VectorXd& w) {
  const Eigen::VectorXd q = 2.0 * (g * w - b);
  const double lambda = q.dot(w);
  const Eigen::VectorXd mu = q.array() - lambda;
  const double dual = std::max(0.0, -mu.minCoeff());
  const double comp = std::abs(mu.dot(w));
  const double primal_sum = std::abs(w.sum() - 1.0);
  const double primal_neg = std::max(0.0, -w.minCoeff());
  return std::max({dual, comp, primal_sum, primal_neg});
}

std::pair<SimplexWeights, SolveReport> qp_simplex(const Eigen::MatrixXd& g,
                                                  const Eigen::VectorXd& b,
                                                  const SpgParams& params) {
  check_gram(g, b);
  const int n = static_cast<int>(g.rows());

  if (n == 1) {
    SolveReport report;
    report.converged = true;
    report.final_objective = g(0, 0) - 2.0 * b(0);
    return {SimplexWeights::uniform(1), report};
  }

  SpgParams qp_params = params;
  qp_params.grad_tol = std::min(params.grad_tol, 1e-9);
  qp_params.max_iter = std::max(params.max_iter, 2000);

  ObjectiveGradient fg = [&](const Eigen::VectorXd& w, Eigen::VectorXd& grad) {
    const Eigen::VectorXd gw = g * w;
    grad = 2.0 * (gw - b);
    return w.dot(gw) - 2.0 * b.dot(w);
  };
  auto [w_spg, report] = spg_minimize(fg, SimplexWeights::uniform(n), qp_params);

  Eigen::VectorXd w_best = w_spg.values();
  const Eigen::VectorXd w_polished = polish_on_support(g, b, w_best);
  if (w_polished.size() == n &&
      objective(g, b, w_polished) <= objective(g, b, w_best) + 1e-14) {
    w_best = w_polished;
  }

  const double residual = qp_kkt_residual(g, b, w_best);
  if (residual > kQpKktTol) {
    std::ostringstream os;
    os << "qp_simplex: KKT residual " << residual << " above " << kQpKktTol;
    throw Error(ErrorCode::SolverFailed, os.str());
  }

  report.final_objective = objective(g, b, w_best);
  report.final_projected_grad_norm =
      (project_simplex(w_best - 2.0 * (g * w_best - b)).values() - w_best)
          .lpNorm<Eigen::Infinity>();
  report.converged = true;
  return {SimplexWeights(std::move(w_best)), report};
}

}  // namespace mccm
