// SPDX-License-Identifier: Apache-2.0

#include "core/spg.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace mccm {

void SpgParams::validate() const {
  if (max_iter < 1 || grad_tol <= 0.0 || line_search_memory < 1 ||
      step_min <= 0.0 || step_max < step_min || armijo_c <= 0.0 ||
      armijo_c >= 1.0) {
    throw Error(ErrorCode::InvalidArgument, "SpgParams: invalid settings");
  }
}

namespace {

double checked_eval(const ObjectiveGradient& fg, const Eigen::VectorXd& w,
                    Eigen::VectorXd& grad) {
  const double f = fg(w, grad);
  if (!std::isfinite(f) || !grad.allFinite()) {
    std::ostringstream os;
    os << "spg_minimize: non-finite objective or gradient at w = ["
       << w.transpose() << "]";
    throw Error(ErrorCode::NonFiniteObjective, os.str());
  }
  return f;
}

}  // namespace

std::pair<SimplexWeights, SolveReport> spg_minimize(const ObjectiveGradient& fg,
                                                    const SimplexWeights& w0,
                                                    const SpgParams& params) {
  params.validate();
  const int n = w0.size();

  Eigen::VectorXd w = w0.values();
  Eigen::VectorXd grad(n);
  double f = checked_eval(fg, w, grad);

  std::deque<double> recent{f};
  SolveReport report;
  report.final_objective = f;

  // Unit-step projected gradient, also the stopping measure.
  auto projected_gradient_norm = [&](const Eigen::VectorXd& wk,
                                     const Eigen::VectorXd& gk) {
    return (project_simplex(wk - gk).values() - wk).lpNorm<Eigen::Infinity>();
  };

  double pg_norm = projected_gradient_norm(w, grad);
  double alpha = pg_norm > 0.0
                     ? std::clamp(1.0 / pg_norm, params.step_min, params.step_max)
                     : 1.0;

  int iter = 0;
  bool converged = pg_norm <= params.grad_tol;
  Eigen::VectorXd grad_next(n);

  while (!converged && iter < params.max_iter) {
    ++iter;
    Eigen::VectorXd direction = project_simplex(w - alpha * grad).values() - w;
    double slope = grad.dot(direction);
    if (slope > 0.0) {
      // Projection arc turned uphill (can only happen through rounding);
      // fall back to the unit-step direction.
      direction = project_simplex(w - grad).values() - w;
      slope = grad.dot(direction);
      if (slope >= 0.0) {
        break;
      }
    }

    const double f_max = *std::max_element(recent.begin(), recent.end());
    double lambda = 1.0;
    Eigen::VectorXd w_next;
    double f_next = f;
    for (;;) {
      w_next = w + lambda * direction;
      f_next = checked_eval(fg, w_next, grad_next);
      if (f_next <= f_max + params.armijo_c * lambda * slope) {
        break;
      }
      const double denom = f_next - f - lambda * slope;
      double lambda_new = denom > 0.0
                              ? -0.5 * lambda * lambda * slope / denom
                              : 0.5 * lambda;
      lambda = std::clamp(lambda_new, 0.1 * lambda, 0.9 * lambda);
      if (lambda < 1e-16) {
        break;  // search direction exhausted at rounding level
      }
    }

    const Eigen::VectorXd s = w_next - w;
    const Eigen::VectorXd y = grad_next - grad;
    const double sy = s.dot(y);
    alpha = sy <= 0.0 ? params.step_max
                      : std::clamp(s.squaredNorm() / sy, params.step_min,
                                   params.step_max);

    w = std::move(w_next);
    f = f_next;
    grad = grad_next;
    recent.push_back(f);
    if (static_cast<int>(recent.size()) > params.line_search_memory) {
      recent.pop_front();
    }

    pg_norm = projected_gradient_norm(w, grad);
    converged = pg_norm <= params.grad_tol;
  }

  report.iterations = iter;
  report.final_objective = f;
  report.final_projected_grad_norm = pg_norm;
  report.converged = converged;
  return {project_simplex(w), report};
}

std::pair<SimplexWeights, SolveReport> spg_minimize(
    const Objective& f,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& grad,
    const SimplexWeights& w0, const SpgParams& params) {
  ObjectiveGradient fg = [&](const Eigen::VectorXd& w, Eigen::VectorXd& g) {
    grad(w, g);
    return f(w);
  };
  return spg_minimize(fg, w0, params);
}

}  // namespace mccm
