// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_FRECHET_HPP
#define MCCM_CORE_FRECHET_HPP

#include <vector>

#include "core/geometry.hpp"
#include "core/simplex.hpp"

namespace mccm {

struct MeanParams {
  double tol = 0.0;   // <= 0 means 1e-9 * dim
  int max_iter = 200;
  double step = 1.0;  // base step, halved on objective increase

  void validate() const;
  double effective_tol(int dim) const;
};

/// Log-Euclidean mean exp(sum_i w_i log X_i).
SpdMatrix le_mean(const std::vector<SpdMatrix>& points,
                  const SimplexWeights& weights);

/// Weighted Fréchet (Karcher) mean under the affine-invariant metric.
/// Fixed-point iteration M <- exp_map(M, step * sum_i w_i log_map(M, X_i))
/// initialized at le_mean, with step halving whenever the weighted sum of
/// squared geodesic distances would increase.  Returns the first iterate
/// whose Karcher residual ||sum_i w_i log_map(M, X_i)||_F is within tol;
/// throws MaxIterError (carrying the last iterate and residual) otherwise.
SpdMatrix frechet_mean(const std::vector<SpdMatrix>& points,
                       const SimplexWeights& weights,
                       const MeanParams& params = {});

/// Karcher residual of a candidate mean; the quantity frechet_mean drives
/// below tol.
double karcher_residual(const SpdMatrix& m, const std::vector<SpdMatrix>& points,
                        const SimplexWeights& weights);

}  // namespace mccm

#endif  // MCCM_CORE_FRECHET_HPP
