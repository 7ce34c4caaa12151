// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_SPG_HPP
#define MCCM_CORE_SPG_HPP

#include <Eigen/Core>

#include <functional>
#include <utility>

#include "core/simplex.hpp"

namespace mccm {

/// Spectral projected gradient settings.
struct SpgParams {
  int max_iter = 500;
  double grad_tol = 1e-7;         // infinity norm of the projected gradient
  int line_search_memory = 10;    // nonmonotone window
  double step_min = 1e-10;        // spectral step clamps
  double step_max = 1e10;
  double armijo_c = 1e-4;

  void validate() const;
};

struct SolveReport {
  int iterations = 0;
  double final_objective = 0.0;
  double final_projected_grad_norm = 0.0;
  bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;
using ObjectiveGradient =
    std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// Minimizes a smooth objective over the probability simplex with the
/// spectral projected gradient method: Barzilai-Borwein step clamped to
/// [step_min, step_max] and a nonmonotone Armijo line search over the last
/// line_search_memory objective values.  Every iterate stays feasible.
///
/// fg evaluates the objective and fills the gradient in one call.
/// Non-finite objective values abort with NonFiniteObjective.
std::pair<SimplexWeights, SolveReport> spg_minimize(
    const ObjectiveGradient& fg, const SimplexWeights& w0,
    const SpgParams& params = {});

/// Convenience overload with separate objective and gradient callables.
std::pair<SimplexWeights, SolveReport> spg_minimize(
    const Objective& f,
    const std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&)>& grad,
    const SimplexWeights& w0, const SpgParams& params = {});

}  // namespace mccm

#endif  // MCCM_CORE_SPG_HPP
