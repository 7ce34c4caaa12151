// SPDX-License-Identifier: Apache-2.0

#ifndef MCCM_CORE_CONVEX_MODEL_HPP
#define MCCM_CORE_CONVEX_MODEL_HPP

#include <optional>
#include <string>
#include <vector>

#include "core/factored.hpp"
#include "core/geometry.hpp"
#include "core/qp.hpp"

namespace mccm {

/// A labeled class model: the finite point set whose weighted Fréchet means
/// form the convex model searched by the distance solvers.
class ConvexClassModel {
 public:
  ConvexClassModel(std::string label, std::vector<SpdMatrix> points);

  const std::string& label() const { return label_; }
  const std::vector<SpdMatrix>& points() const { return points_; }
  int size() const { return static_cast<int>(points_.size()); }
  int dim() const { return points_.front().dim(); }

 private:
  std::string label_;
  std::vector<SpdMatrix> points_;
};

enum class MccmVariant { FM, CS, LE };

const char* variant_name(MccmVariant v);

struct DistanceResult {
  double distance = 0.0;
  SimplexWeights weights;
  SolveReport report;
  // CS diagnostic only: whether Y - sum_i w_i X_i is positive semi-definite
  // at the optimum.
  std::optional<bool> query_dominates;
};

// The three convex-model distances.  Each solver whitens by the query once,
// precomputes whatever is reusable across iterations, and reports the
// distance (not its square) together with the optimal weights.
DistanceResult dist_fm(const SpdMatrix& y, const ConvexClassModel& model,
                       const SpgParams& params = {});
DistanceResult dist_cs(const SpdMatrix& y, const ConvexClassModel& model,
                       const SpgParams& params = {});
DistanceResult dist_le(const SpdMatrix& y, const ConvexClassModel& model,
                       const SpgParams& params = {});

// Overloads for queries carried in factored form; these run the same solver
// cores but prepare the whitened inputs through the graded-SVD path, which
// stays accurate at eigenvalue ranges where a materialized query would not.
DistanceResult dist_fm(const FactoredSpd& y, const ConvexClassModel& model,
                       const SpgParams& params = {});
DistanceResult dist_cs(const FactoredSpd& y, const ConvexClassModel& model,
                       const SpgParams& params = {});
DistanceResult dist_le(const FactoredSpd& y, const ConvexClassModel& model,
                       const SpgParams& params = {});

DistanceResult model_distance(const SpdMatrix& y, const ConvexClassModel& model,
                              MccmVariant variant, const SpgParams& params = {});
DistanceResult model_distance(const FactoredSpd& y,
                              const ConvexClassModel& model, MccmVariant variant,
                              const SpgParams& params = {});

/// Euclidean convex hull distance of a vector to the hull of a point set
/// (Gram-matrix quadratic program).
DistanceResult euclidean_hull_dist(const Eigen::VectorXd& y,
                                   const std::vector<Eigen::VectorXd>& points,
                                   const SpgParams& params = {});

namespace detail {

// Objective/gradient callables the solvers minimize, exposed so the
// finite-difference gradient suite can probe exactly what runs inside.
// fm: g(w) = ||sum_i w_i L_i||_F^2 over the whitened logs L_i.
// cs: f(w) = ||log(sum_i w_i B_i)||_F^2 over the whitened points B_i.
ObjectiveGradient fm_objective(std::vector<Eigen::MatrixXd> logs);
ObjectiveGradient cs_objective(std::vector<Eigen::MatrixXd> whitened);

// Solver cores shared by the dense and factored preparation paths.
DistanceResult solve_fm_from_logs(const std::vector<Eigen::MatrixXd>& logs,
                                  const SpgParams& params);
DistanceResult solve_cs_dense(const std::vector<Eigen::MatrixXd>& whitened,
                              const SpgParams& params);
DistanceResult solve_cs_factored(const std::vector<Eigen::MatrixXd>& factors,
                                 const Eigen::VectorXd& neg_log_scale,
                                 const SpgParams& params);
DistanceResult solve_le(const Eigen::VectorXd& y,
                        const Eigen::MatrixXd& dictionary,
                        const SpgParams& params);

/// LE dictionary of a model: column j = vectorize_symmetric(log X_j).
Eigen::MatrixXd le_dictionary(const ConvexClassModel& model);

}  // namespace detail

}  // namespace mccm

#endif  // MCCM_CORE_CONVEX_MODEL_HPP
